#pragma once

// Exact translation between matched bipartite graphs and loop-free digraphs:
// matching pair i of G becomes vertex i of D, and arc (i -> j), i != j,
// exists iff G has the edge (b_i, w_j).  Under this map M-alternating
// Hamilton cycles of G correspond one-to-one to directed Hamilton cycles
// of D, and degrees satisfy d_G(w_i) = inDegree(i) + 1 and
// d_G(b_i) = outDegree(i) + 1.

#include "hamlab/bipartite.hpp"
#include "hamlab/graph.hpp"

namespace hamlab {

Digraph contract(const MatchedBipartite& g);
MatchedBipartite expand(const Digraph& d);

// Replace every undirected edge with the two opposite arcs.
Digraph doubleUndirected(const UndirectedGraph& g);

// Translate a directed cycle of contract(g) into the alternating cycle of g
// it corresponds to (and similarly for directed paths / closed paths).
AlternatingCycle liftCycle(const MatchedBipartite& g, const std::vector<int>& pairCycle);
AlternatingPath liftClosedPath(const MatchedBipartite& g, const std::vector<int>& pairPath);

// Serialization labeling for matched graphs as plain graphs: vertex i is w_i
// and vertex halfOrder+i is b_i, so the matching is the diagonal (i, n+i).
// The reverse direction validates that shape (even order, edges only across
// the split, full diagonal) and throws a domain error otherwise.
UndirectedGraph matchedToLabeled(const MatchedBipartite& g);
MatchedBipartite matchedFromLabeled(const UndirectedGraph& g);

}  // namespace hamlab
