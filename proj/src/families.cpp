#include "hamlab/families.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hamlab/correspondence.hpp"

namespace hamlab {

namespace {

Mask fullMask(int order) {
    return order >= 64 ? ~Mask{0} : bit(order) - 1;
}

void requirePositive(int value, const char* what) {
    if (value < 1) throw DomainError(std::string(what) + " must be at least 1");
}

Digraph innerDigraph(const FamilyTag& tag) {
    Digraph inner = decodeDigraphCode(CanonicalCode::fromHex(tag.innerCode));
    if (inner.order() != tag.n)
        throw DomainError("inner digraph order does not match the family parameter");
    return inner;
}

UndirectedGraph innerUndirected(const FamilyTag& tag) {
    UndirectedGraph inner = decodeGraphCode(CanonicalCode::fromHex(tag.innerCode));
    if (inner.order() != tag.n)
        throw DomainError("inner graph order does not match the family parameter");
    return inner;
}

// Two complete digraphs on n+1 and m+1 vertices sharing the last vertex.
Digraph buildD1Graph(int n, int m) {
    requirePositive(n, "block size n");
    requirePositive(m, "block size m");
    int order = n + m + 1;
    int cut = n + m;
    std::vector<std::pair<int, int>> arcs;
    auto joinBlock = [&](int lo, int hi) {
        std::vector<int> vs;
        for (int v = lo; v < hi; ++v) vs.push_back(v);
        vs.push_back(cut);
        for (int u : vs)
            for (int v : vs)
                if (u != v) arcs.emplace_back(u, v);
    };
    joinBlock(0, n);
    joinBlock(n, n + m);
    return Digraph(order, arcs);
}

// Vertices n..2n form the independent set, joined two-way to the inner copy
// on vertices 0..n-1.
Digraph buildD2Graph(int n, const Digraph& inner) {
    requirePositive(n, "parameter n");
    if (inner.order() != n) throw DomainError("inner digraph order must equal n");
    int order = 2 * n + 1;
    std::vector<std::pair<int, int>> arcs = inner.arcs();
    for (int s = n; s < order; ++s)
        for (int t = 0; t < n; ++t) {
            arcs.emplace_back(s, t);
            arcs.emplace_back(t, s);
        }
    return Digraph(order, arcs);
}

// Base vertices 0,1,2,3 (the a,b,c,d of the pattern); core vertices 4..n+3.
Digraph buildD3Graph(int n, bool optForward, bool optBackward) {
    requirePositive(n, "parameter n");
    int order = n + 4;
    std::vector<std::pair<int, int>> arcs = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {2, 0}};
    if (optForward) arcs.emplace_back(1, 3);
    if (optBackward) arcs.emplace_back(3, 1);
    for (int u = 4; u < order; ++u) {
        for (int v = 4; v < order; ++v)
            if (u != v) arcs.emplace_back(u, v);
        for (int hub : {1, 3}) {
            arcs.emplace_back(hub, u);
            arcs.emplace_back(u, hub);
        }
    }
    return Digraph(order, arcs);
}

bool isCompleteDigraphOn(const Digraph& d, Mask mask) {
    for (Mask rest = mask; rest != 0; rest &= rest - 1) {
        int v = std::countr_zero(rest);
        Mask others = mask & ~bit(v);
        if ((d.outMask(v) & mask) != others) return false;
        if ((d.inMask(v) & mask) != others) return false;
    }
    return true;
}

bool isCompleteGraphOn(const UndirectedGraph& g, Mask mask) {
    for (Mask rest = mask; rest != 0; rest &= rest - 1) {
        int v = std::countr_zero(rest);
        if ((g.adjMask(v) & mask) != (mask & ~bit(v))) return false;
    }
    return true;
}

// Shared shape of D1 and G5: a cut vertex whose removal leaves exactly two
// components, each forming a complete block together with the cut vertex.
template <typename Graph, typename BlockCheck>
std::optional<std::pair<int, int>> findTwoCompleteBlocks(const Graph& shadowHost,
                                                         BlockCheck blockComplete) {
    int order = shadowHost.order();
    if (order < 3) return std::nullopt;
    for (int c = 0; c < order; ++c) {
        std::vector<int> rest;
        rest.reserve(order - 1);
        for (int v = 0; v < order; ++v)
            if (v != c) rest.push_back(v);
        auto induced = shadowHost.inducedSubgraph(rest);
        auto comps = components(induced.graph);
        if (comps.size() != 2) continue;
        Mask masks[2] = {bit(c), bit(c)};
        for (int side = 0; side < 2; ++side)
            for (int v : comps[side]) masks[side] |= bit(induced.originalIndex[v]);
        if (!blockComplete(masks[0]) || !blockComplete(masks[1])) continue;
        int a = static_cast<int>(comps[0].size());
        int b = static_cast<int>(comps[1].size());
        return std::make_pair(std::min(a, b), std::max(a, b));
    }
    return std::nullopt;
}

std::optional<FamilyTag> tryD1(const Digraph& d) {
    auto blocks = findTwoCompleteBlocks(
        underlyingGraph(d), [&](Mask mask) { return isCompleteDigraphOn(d, mask); });
    if (!blocks) return std::nullopt;
    return FamilyTag::d1(blocks->first, blocks->second);
}

std::optional<FamilyTag> tryD2(const Digraph& d) {
    int order = d.order();
    if (order < 3 || order % 2 == 0) return std::nullopt;
    int n = (order - 1) / 2;
    // Members of the independent set see exactly the n inner vertices in each
    // direction; inner vertices see at least the n+1 set members, so the
    // degree filter recovers the set uniquely.
    Mask setMask = 0;
    for (int v = 0; v < order; ++v)
        if (d.outDegree(v) == n && d.inDegree(v) == n) setMask |= bit(v);
    if (std::popcount(setMask) != n + 1) return std::nullopt;
    Mask restMask = fullMask(order) & ~setMask;
    for (Mask rest = setMask; rest != 0; rest &= rest - 1) {
        int v = std::countr_zero(rest);
        if (d.outMask(v) != restMask || d.inMask(v) != restMask) return std::nullopt;
    }
    std::vector<int> innerVertices;
    for (int v = 0; v < order; ++v)
        if (!((setMask >> v) & 1)) innerVertices.push_back(v);
    return FamilyTag::d2(n, d.inducedSubgraph(innerVertices).graph);
}

std::optional<FamilyTag> tryD3(const Digraph& d) {
    int order = d.order();
    if (order < 5) return std::nullopt;
    int n = order - 4;
    Mask all = fullMask(order);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) {
            if (b == a) continue;
            for (int c = 0; c < order; ++c) {
                if (c == a || c == b) continue;
                for (int e = 0; e < order; ++e) {
                    if (e == a || e == b || e == c) continue;
                    Mask coreMask = all & ~(bit(a) | bit(b) | bit(c) | bit(e));
                    if ((d.outMask(a) | d.inMask(a)) & coreMask) continue;
                    if ((d.outMask(c) | d.inMask(c)) & coreMask) continue;
                    if ((d.outMask(b) & coreMask) != coreMask) continue;
                    if ((d.inMask(b) & coreMask) != coreMask) continue;
                    if ((d.outMask(e) & coreMask) != coreMask) continue;
                    if ((d.inMask(e) & coreMask) != coreMask) continue;
                    bool coreComplete = true;
                    for (Mask rest = coreMask; rest != 0; rest &= rest - 1) {
                        int v = std::countr_zero(rest);
                        if ((d.outMask(v) & coreMask) != (coreMask & ~bit(v))) {
                            coreComplete = false;
                            break;
                        }
                    }
                    if (!coreComplete) continue;
                    if (!(d.arc(a, b) && d.arc(b, c) && d.arc(c, e) && d.arc(e, a) &&
                          d.arc(a, c) && d.arc(c, a)))
                        continue;
                    if (d.arc(b, a) || d.arc(c, b) || d.arc(e, c) || d.arc(a, e)) continue;
                    bool fwd = d.arc(b, e);
                    bool bwd = d.arc(e, b);
                    // The relabeling (a,b,c,d) -> (c,d,a,b) fixes the pattern
                    // and swaps the two option arcs, so a single option is
                    // reported in normalized (forward) position.
                    if (fwd != bwd) {
                        fwd = true;
                        bwd = false;
                    }
                    return FamilyTag::d3(n, fwd, bwd);
                }
            }
        }
    return std::nullopt;
}

std::optional<FamilyTag> tryD4(const Digraph& d) {
    if (d.order() != 7 || d4CanonicalHex().empty()) return std::nullopt;
    if (canonicalCode(d).hex() != d4CanonicalHex()) return std::nullopt;
    return FamilyTag::d4();
}

std::optional<FamilyTag> tryG5(const UndirectedGraph& g) {
    auto blocks =
        findTwoCompleteBlocks(g, [&](Mask mask) { return isCompleteGraphOn(g, mask); });
    if (!blocks) return std::nullopt;
    return FamilyTag::g5(blocks->first, blocks->second);
}

std::optional<FamilyTag> tryG6(const UndirectedGraph& g) {
    int order = g.order();
    if (order < 3 || order % 2 == 0) return std::nullopt;
    int n = (order - 1) / 2;
    Mask setMask = 0;
    for (int v = 0; v < order; ++v)
        if (g.degree(v) == n) setMask |= bit(v);
    if (std::popcount(setMask) != n + 1) return std::nullopt;
    Mask restMask = fullMask(order) & ~setMask;
    for (Mask rest = setMask; rest != 0; rest &= rest - 1) {
        int v = std::countr_zero(rest);
        if (g.adjMask(v) != restMask) return std::nullopt;
    }
    std::vector<int> innerVertices;
    for (int v = 0; v < order; ++v)
        if (!((setMask >> v) & 1)) innerVertices.push_back(v);
    return FamilyTag::g6(n, g.inducedSubgraph(innerVertices).graph);
}

void checkRecognitionCap(int order, int cap) {
    if (order > cap)
        throw CapabilityError("recognition supports order <= " + std::to_string(cap) +
                              " (got " + std::to_string(order) + ")");
}

const char* kindName(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::d1: return "D1";
        case FamilyKind::d2: return "D2";
        case FamilyKind::d3: return "D3";
        case FamilyKind::d4: return "D4";
        case FamilyKind::g1: return "G1";
        case FamilyKind::g2: return "G2";
        case FamilyKind::g3: return "G3";
        case FamilyKind::g4: return "G4";
        case FamilyKind::g5: return "G5";
        case FamilyKind::g6: return "G6";
        case FamilyKind::d1Prime: return "D1'";
        case FamilyKind::d3Prime: return "D3'";
    }
    throw DomainError("unknown family kind");
}

}  // namespace

std::string FamilyTag::str() const {
    std::ostringstream out;
    out << kindName(kind);
    switch (kind) {
        case FamilyKind::d1:
        case FamilyKind::g1:
        case FamilyKind::g5: out << '(' << n << ',' << m << ')'; break;
        case FamilyKind::d2:
        case FamilyKind::g2:
        case FamilyKind::g6: out << '(' << n << ",inner=" << innerCode << ')'; break;
        case FamilyKind::d3:
        case FamilyKind::g3:
            out << '(' << n << ",fwd=" << (optForward ? 1 : 0) << ",bwd=" << (optBackward ? 1 : 0)
                << ')';
            break;
        case FamilyKind::d4:
        case FamilyKind::g4: break;
        case FamilyKind::d1Prime: out << '(' << n << ')'; break;
        case FamilyKind::d3Prime:
            out << "(fwd=" << (optForward ? 1 : 0) << ",bwd=" << (optBackward ? 1 : 0) << ')';
            break;
    }
    return out.str();
}

FamilyTag FamilyTag::d1(int n, int m) {
    requirePositive(n, "block size n");
    requirePositive(m, "block size m");
    FamilyTag tag{FamilyKind::d1};
    tag.n = n;
    tag.m = m;
    return tag;
}

FamilyTag FamilyTag::d2(int n, const Digraph& inner) {
    requirePositive(n, "parameter n");
    if (inner.order() != n) throw DomainError("inner digraph order must equal n");
    FamilyTag tag{FamilyKind::d2};
    tag.n = n;
    tag.innerCode = canonicalCode(inner).hex();
    return tag;
}

FamilyTag FamilyTag::d3(int n, bool optForward, bool optBackward) {
    requirePositive(n, "parameter n");
    FamilyTag tag{FamilyKind::d3};
    tag.n = n;
    tag.optForward = optForward;
    tag.optBackward = optBackward;
    return tag;
}

FamilyTag FamilyTag::d4() { return FamilyTag{FamilyKind::d4}; }

FamilyTag FamilyTag::g1(int n, int m) {
    FamilyTag tag = d1(n, m);
    tag.kind = FamilyKind::g1;
    return tag;
}

FamilyTag FamilyTag::g2(int n, const MatchedBipartite& inner) {
    requirePositive(n, "parameter n");
    if (inner.halfOrder() != n) throw DomainError("inner graph must have n matching pairs");
    FamilyTag tag{FamilyKind::g2};
    tag.n = n;
    tag.innerCode = canonicalCode(contract(inner)).hex();
    return tag;
}

FamilyTag FamilyTag::g2FromRows(int n, int innerHalfOrder, std::span<const Mask> innerWRows) {
    requirePositive(n, "parameter n");
    if (innerHalfOrder != n) throw DomainError("inner graph must have n matching pairs");
    auto matching = findPerfectMatching(innerHalfOrder, innerWRows);
    if (!matching) throw DomainError("inner bipartite graph has no perfect matching");
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, int>> matchingPairs;
    for (int i = 0; i < innerHalfOrder; ++i) {
        for (Mask rest = innerWRows[i]; rest != 0; rest &= rest - 1)
            edges.emplace_back(i, std::countr_zero(rest));
        matchingPairs.emplace_back(i, (*matching)[i]);
    }
    return g2(n, MatchedBipartite::fromEdges(innerHalfOrder, edges, matchingPairs));
}

FamilyTag FamilyTag::g3(int n, bool optForward, bool optBackward) {
    FamilyTag tag = d3(n, optForward, optBackward);
    tag.kind = FamilyKind::g3;
    return tag;
}

FamilyTag FamilyTag::g4() { return FamilyTag{FamilyKind::g4}; }

FamilyTag FamilyTag::g5(int n, int m) {
    FamilyTag tag = d1(n, m);
    tag.kind = FamilyKind::g5;
    return tag;
}

FamilyTag FamilyTag::g6(int n, const UndirectedGraph& inner) {
    requirePositive(n, "parameter n");
    if (inner.order() != n) throw DomainError("inner graph order must equal n");
    FamilyTag tag{FamilyKind::g6};
    tag.n = n;
    tag.innerCode = canonicalCode(inner).hex();
    return tag;
}

FamilyTag FamilyTag::d1Prime(int n) {
    FamilyTag tag = d1(n, n);
    tag.kind = FamilyKind::d1Prime;
    tag.m = n;
    return tag;
}

FamilyTag FamilyTag::d3Prime(bool optForward, bool optBackward) {
    FamilyTag tag = d3(1, optForward, optBackward);
    tag.kind = FamilyKind::d3Prime;
    return tag;
}

const std::string& d4CanonicalHex() {
    // Canonical code of the unique seven-vertex sporadic digraph.  It is
    // reproducible from first principles: the derivation search (see
    // deriveG4) enumerates all completions of the forced arc skeleton and
    // exactly one assignment survives the slack, cycle, and novelty filters.
    static const std::string hex = "0715b9aae31980";
    return hex;
}

Digraph buildDirected(const FamilyTag& tag) {
    switch (tag.kind) {
        case FamilyKind::d1: return buildD1Graph(tag.n, tag.m);
        case FamilyKind::d1Prime: return buildD1Graph(tag.n, tag.n);
        case FamilyKind::d2: return buildD2Graph(tag.n, innerDigraph(tag));
        case FamilyKind::d3: return buildD3Graph(tag.n, tag.optForward, tag.optBackward);
        case FamilyKind::d3Prime: return buildD3Graph(1, tag.optForward, tag.optBackward);
        case FamilyKind::d4:
            return decodeDigraphCode(CanonicalCode::fromHex(d4CanonicalHex()));
        default: throw DomainError("buildDirected requires a directed family tag");
    }
}

MatchedBipartite buildBipartite(const FamilyTag& tag) {
    FamilyTag directedTag = tag;
    switch (tag.kind) {
        case FamilyKind::g1: directedTag.kind = FamilyKind::d1; break;
        case FamilyKind::g2: directedTag.kind = FamilyKind::d2; break;
        case FamilyKind::g3: directedTag.kind = FamilyKind::d3; break;
        case FamilyKind::g4: directedTag.kind = FamilyKind::d4; break;
        default: throw DomainError("buildBipartite requires a matched-bipartite family tag");
    }
    return expand(buildDirected(directedTag));
}

UndirectedGraph buildUndirected(const FamilyTag& tag) {
    switch (tag.kind) {
        case FamilyKind::g5: {
            requirePositive(tag.n, "block size n");
            requirePositive(tag.m, "block size m");
            int order = tag.n + tag.m + 1;
            int cut = tag.n + tag.m;
            std::vector<std::pair<int, int>> edges;
            auto joinBlock = [&](int lo, int hi) {
                std::vector<int> vs;
                for (int v = lo; v < hi; ++v) vs.push_back(v);
                vs.push_back(cut);
                for (std::size_t i = 0; i < vs.size(); ++i)
                    for (std::size_t j = i + 1; j < vs.size(); ++j)
                        edges.emplace_back(vs[i], vs[j]);
            };
            joinBlock(0, tag.n);
            joinBlock(tag.n, tag.n + tag.m);
            return UndirectedGraph(order, edges);
        }
        case FamilyKind::g6: {
            requirePositive(tag.n, "parameter n");
            UndirectedGraph inner = innerUndirected(tag);
            int order = 2 * tag.n + 1;
            std::vector<std::pair<int, int>> edges = inner.edges();
            for (int s = tag.n; s < order; ++s)
                for (int t = 0; t < tag.n; ++t) edges.emplace_back(s, t);
            return UndirectedGraph(order, edges);
        }
        default: throw DomainError("buildUndirected requires an undirected family tag");
    }
}

std::optional<FamilyTag> recognizeDirected(const Digraph& d, int cap) {
    checkRecognitionCap(d.order(), cap);
    if (auto tag = tryD1(d)) return tag;
    if (auto tag = tryD2(d)) return tag;
    if (auto tag = tryD3(d)) return tag;
    if (auto tag = tryD4(d)) return tag;
    return std::nullopt;
}

std::optional<FamilyTag> recognizeBipartite(const MatchedBipartite& g, int cap) {
    checkRecognitionCap(g.halfOrder(), cap);
    // Family membership of a matched graph, including that the designated
    // matching sits where the family requires it, is exactly membership of
    // its contraction in the directed family: the contraction encodes the
    // matching, so a graph with the right shape but the wrong matching
    // contracts to a digraph outside the catalogue.
    auto directedTag = recognizeDirected(contract(g), cap);
    if (!directedTag) return std::nullopt;
    FamilyTag tag = *directedTag;
    switch (tag.kind) {
        case FamilyKind::d1: tag.kind = FamilyKind::g1; break;
        case FamilyKind::d2: tag.kind = FamilyKind::g2; break;
        case FamilyKind::d3: tag.kind = FamilyKind::g3; break;
        case FamilyKind::d4: tag.kind = FamilyKind::g4; break;
        default: return std::nullopt;
    }
    return tag;
}

std::optional<FamilyTag> recognizeUndirected(const UndirectedGraph& g, int cap) {
    checkRecognitionCap(g.order(), cap);
    if (auto tag = tryG5(g)) return tag;
    if (auto tag = tryG6(g)) return tag;
    return std::nullopt;
}

std::optional<FamilyTag> toTheorem14Tag(const FamilyTag& tag) {
    switch (tag.kind) {
        case FamilyKind::d1:
            if (tag.n != tag.m) return std::nullopt;
            return FamilyTag::d1Prime(tag.n);
        case FamilyKind::d2: return tag;
        case FamilyKind::d3:
            if (tag.n != 1) return std::nullopt;
            return FamilyTag::d3Prime(tag.optForward, tag.optBackward);
        case FamilyKind::d4: return tag;
        case FamilyKind::d1Prime:
        case FamilyKind::d3Prime: return tag;
        default: return std::nullopt;
    }
}

}  // namespace hamlab
