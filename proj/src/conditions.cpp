#include "hamlab/conditions.hpp"

#include <algorithm>

namespace hamlab {

namespace {

// Accumulates min-slack candidates; keeps all pairs attaining the minimum.
struct MinTracker {
    std::optional<int> minValue;
    std::vector<std::pair<int, int>> argmin;

    void offer(int value, int a, int b) {
        if (!minValue || value < *minValue) {
            minValue = value;
            argmin.clear();
        }
        if (value == *minValue) argmin.emplace_back(a, b);
    }
};

ConditionReport finish(ConditionMode mode, int threshold, MinTracker&& tracker) {
    ConditionReport report;
    report.mode = mode;
    report.threshold = threshold;
    if (tracker.minValue) {
        report.slack = *tracker.minValue - threshold;
        report.witnesses = std::move(tracker.argmin);
    }
    return report;
}

}  // namespace

std::string conditionModeName(ConditionMode mode) {
    switch (mode) {
        case ConditionMode::woodallNonArc: return "woodall";
        case ConditionMode::allPairs: return "all-pairs";
        case ConditionMode::ghouilaHouri: return "ghouila";
        case ConditionMode::semiDegree: return "semidegree";
        case ConditionMode::lasVergnas: return "las-vergnas";
        case ConditionMode::ore: return "ore";
        case ConditionMode::dirac: return "dirac";
    }
    return "?";
}

ConditionReport digraphSlack(const Digraph& d, ConditionMode mode) {
    const int n = d.order();
    if (n < 2) throw DomainError("degree condition needs order >= 2");
    MinTracker tracker;
    switch (mode) {
        case ConditionMode::woodallNonArc:
        case ConditionMode::allPairs: {
            // The non-arc mode ranges over distinct pairs lacking the arc
            // u -> v.  The all-pairs mode drops both restrictions: it also
            // bounds d+(v) + d-(v) on every single vertex, which is what
            // separates its exception catalogue from the non-arc one.
            const bool nonArcOnly = mode == ConditionMode::woodallNonArc;
            for (int u = 0; u < n; ++u) {
                for (int v = 0; v < n; ++v) {
                    if (nonArcOnly && (u == v || d.arc(u, v))) continue;
                    tracker.offer(d.outDegree(u) + d.inDegree(v), u, v);
                }
            }
            return finish(mode, n, std::move(tracker));
        }
        case ConditionMode::ghouilaHouri: {
            for (int v = 0; v < n; ++v) tracker.offer(d.degree(v), v, v);
            return finish(mode, n, std::move(tracker));
        }
        case ConditionMode::semiDegree: {
            for (int v = 0; v < n; ++v) {
                tracker.offer(std::min(d.outDegree(v), d.inDegree(v)), v, v);
            }
            return finish(mode, (n + 1) / 2, std::move(tracker));
        }
        default:
            throw DomainError("mode is not a digraph condition");
    }
}

ConditionReport bipartiteSlack(const MatchedBipartite& g, ConditionMode mode) {
    if (mode != ConditionMode::lasVergnas) {
        throw DomainError("mode is not a matched-bipartite condition");
    }
    const int n = g.halfOrder();
    MinTracker tracker;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (g.edge(i, j)) continue;
            tracker.offer(g.wDegree(i) + g.bDegree(j), g.wVertex(i), g.bVertex(j));
        }
    }
    return finish(mode, n + 2, std::move(tracker));
}

ConditionReport undirectedSlack(const UndirectedGraph& g, ConditionMode mode) {
    const int n = g.order();
    MinTracker tracker;
    switch (mode) {
        case ConditionMode::ore: {
            for (int u = 0; u < n; ++u) {
                for (int v = u + 1; v < n; ++v) {
                    if (g.edge(u, v)) continue;
                    tracker.offer(g.degree(u) + g.degree(v), u, v);
                }
            }
            return finish(mode, n, std::move(tracker));
        }
        case ConditionMode::dirac: {
            for (int v = 0; v < n; ++v) tracker.offer(g.degree(v), v, v);
            return finish(mode, (n + 1) / 2, std::move(tracker));
        }
        default:
            throw DomainError("mode is not an undirected condition");
    }
}

}  // namespace hamlab
