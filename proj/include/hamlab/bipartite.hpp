#pragma once

// Balanced bipartite graphs carrying a designated perfect matching M.
// Values are normalized on construction so that matching pair i consists of
// w_i and b_i.  Global vertex ids: w_i = i, b_i = halfOrder + i.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hamlab/graph.hpp"

namespace hamlab {

class MatchedBipartite {
public:
    MatchedBipartite() = default;

    // Edges and matching are (wIndex, bIndex) pairs over the *input* labels.
    // The matching must be a perfect matching contained in the edge set; the
    // B side is relabeled so pair i becomes (w_i, b_i).
    static MatchedBipartite fromEdges(int halfOrder,
                                      std::span<const std::pair<int, int>> wbEdges,
                                      std::span<const std::pair<int, int>> matching);

    // Adjacency rows over b-indices; diagonal bits (the matching) must be set.
    static MatchedBipartite fromWRows(int halfOrder, std::span<const Mask> wRows);

    int halfOrder() const { return n_; }
    int nu() const { return 2 * n_; }  // number of vertices

    bool edge(int wIdx, int bIdx) const { return (wAdj_[check(wIdx)] >> check(bIdx)) & 1; }
    int wDegree(int wIdx) const;
    int bDegree(int bIdx) const;
    Mask wRow(int wIdx) const { return wAdj_[check(wIdx)]; }
    Mask bRow(int bIdx) const { return bAdj_[check(bIdx)]; }
    int edgeCount() const;

    // Global vertex ids.
    int wVertex(int i) const { return check(i); }
    int bVertex(int i) const { return n_ + check(i); }
    bool isW(int v) const { return checkGlobal(v) < n_; }
    int pairOf(int v) const { return checkGlobal(v) < n_ ? v : v - n_; }
    bool edgeByVertex(int x, int y) const;
    bool isMatchingEdge(int x, int y) const;

    MatchedBipartite withEdge(int wIdx, int bIdx) const;

    // Subgraph induced on a set of matching pairs.
    struct Induced;
    Induced inducedOnPairs(std::span<const int> pairIndices) const;
    // Vertex-set flavor; the set must be M-closed (w_i in iff b_i in).
    Induced inducedSubgraph(std::span<const int> vertices) const;

    bool operator==(const MatchedBipartite& other) const = default;

private:
    int check(int i) const {
        if (i < 0 || i >= n_) throw DomainError("pair index out of range");
        return i;
    }
    int checkGlobal(int v) const {
        if (v < 0 || v >= 2 * n_) throw DomainError("vertex id out of range");
        return v;
    }

    int n_ = 0;
    std::vector<Mask> wAdj_;  // wAdj_[i] bit j <=> edge (w_i, b_j)
    std::vector<Mask> bAdj_;  // transpose
};

struct MatchedBipartite::Induced {
    MatchedBipartite graph;
    std::vector<int> originalPair;  // originalPair[i] = source pair of new pair i
};

// Maximum matching search (augmenting paths).  Returns a perfect matching of
// the bipartite graph given by wRows, or nullopt if none exists.
std::optional<std::vector<int>> findPerfectMatching(int halfOrder, std::span<const Mask> wRows);

// An M-alternating cycle, stored as the vertex sequence
//   w, b, w, b, ...  (global ids, even length >= 4)
// starting on the W side with its matching edge first, so edges at even
// offsets are matching edges and edges at odd offsets are not.
struct AlternatingCycle {
    std::vector<int> seq;

    int length() const { return static_cast<int>(seq.size()); }
    std::vector<int> matchingEdgeOffsets() const;
};

// An M-alternating path.  Closed paths start and end with matching edges:
//   w, b, w, b, ..., w, b  (even length >= 2; edges at even offsets in M).
struct AlternatingPath {
    std::vector<int> seq;

    int length() const { return static_cast<int>(seq.size()); }
};

// Validators used on every solver return; they re-check structure directly
// against the host graph, independent of how the object was produced.
bool isValidAlternatingCycle(const MatchedBipartite& g, const AlternatingCycle& c);
bool isValidClosedAlternatingPath(const MatchedBipartite& g, const AlternatingPath& p);

}  // namespace hamlab
