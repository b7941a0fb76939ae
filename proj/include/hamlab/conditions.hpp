#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hamlab/bipartite.hpp"
#include "hamlab/errors.hpp"
#include "hamlab/graph.hpp"

namespace hamlab {

// Degree-condition checkers.  Every mode quantifies a pair set, compares an
// achieved degree sum against a threshold depending only on the input size,
// and reports the minimum margin ("slack") together with every pair attaining
// it.  Conventions:
//   - Pairs are ordered pairs of distinct vertices, except allPairs, which
//     also evaluates the degenerate pairs u = v (graphs stay loop-free; only
//     the quantifier changes).  The diagonal matters: it is what separates
//     the allPairs exception catalogue from the non-arc one.
//   - slack is empty ("vacuous") when the quantified pair set is empty, so
//     callers must treat complete graphs explicitly.
//   - slack >= 0 exactly when the classical condition holds; the relaxed
//     threshold-minus-one conditions are the slack >= -1 level sets.
//   - For the single-vertex modes (ghouilaHouri, semiDegree, dirac) a
//     "pair" degenerates to one vertex, reported as (v, v), and the halved
//     bounds |D|/2, |G|/2 are rounded up so the report stays integral
//     (equivalent for integer degrees).
enum class ConditionMode {
    woodallNonArc,  // non-arc distinct ordered pairs (u,v): d+(u) + d-(v) vs |D|
    allPairs,       // all ordered pairs, u = v included:    d+(u) + d-(v) vs |D|
    ghouilaHouri,   // every vertex: d+(v) + d-(v)  vs |D|
    semiDegree,     // every vertex: min(d+, d-)    vs ceil(|D|/2)
    lasVergnas,     // nonadjacent cross pairs (w,b): d(w) + d(b) vs nu/2 + 2
    ore,            // nonadjacent pairs {u,v}: d(u) + d(v) vs |G|
    dirac,          // every vertex: d(v) vs ceil(|G|/2)
};

std::string conditionModeName(ConditionMode mode);

struct ConditionReport {
    ConditionMode mode;
    int threshold = 0;
    std::optional<int> slack;  // empty = vacuous
    // Pairs attaining the minimum.  Digraph modes: (u, v) vertex ids.
    // Bipartite mode: global vertex ids (w in 0..n-1, b in n..2n-1).
    // Undirected ore: u < v.  Single-vertex modes: (v, v).
    std::vector<std::pair<int, int>> witnesses;

    bool vacuous() const { return !slack.has_value(); }
    bool operator==(const ConditionReport&) const = default;
};

// Requires order >= 2.
ConditionReport digraphSlack(const Digraph& d, ConditionMode mode);

// mode must be lasVergnas.
ConditionReport bipartiteSlack(const MatchedBipartite& g, ConditionMode mode);

// mode must be ore or dirac.
ConditionReport undirectedSlack(const UndirectedGraph& g, ConditionMode mode);

}  // namespace hamlab
