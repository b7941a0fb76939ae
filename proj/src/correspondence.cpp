#include "hamlab/correspondence.hpp"

namespace hamlab {

Digraph contract(const MatchedBipartite& g) {
    const int n = g.halfOrder();
    std::vector<Mask> rows(n, 0);
    // arc (i -> j) iff edge (b_i, w_j), i != j; bRow(i) lists the w-neighbors
    // of b_i, and bit i of it is the matching edge.
    for (int i = 0; i < n; ++i) rows[i] = g.bRow(i) & ~bit(i);
    return Digraph::fromOutRows(n, rows);
}

MatchedBipartite expand(const Digraph& d) {
    const int n = d.order();
    if (n < 1) throw DomainError("cannot expand an empty digraph");
    std::vector<Mask> wRows(n, 0);
    // w_j is adjacent to b_i iff i == j (matching) or arc (i -> j).
    for (int j = 0; j < n; ++j) wRows[j] = d.inMask(j) | bit(j);
    return MatchedBipartite::fromWRows(n, wRows);
}

Digraph doubleUndirected(const UndirectedGraph& g) {
    std::vector<Mask> rows(g.order());
    for (int v = 0; v < g.order(); ++v) rows[v] = g.adjMask(v);
    return Digraph::fromOutRows(g.order(), rows);
}

AlternatingCycle liftCycle(const MatchedBipartite& g, const std::vector<int>& pairCycle) {
    AlternatingCycle c;
    c.seq.reserve(2 * pairCycle.size());
    for (int i : pairCycle) {
        c.seq.push_back(g.wVertex(i));
        c.seq.push_back(g.bVertex(i));
    }
    return c;
}

AlternatingPath liftClosedPath(const MatchedBipartite& g, const std::vector<int>& pairPath) {
    AlternatingPath p;
    p.seq.reserve(2 * pairPath.size());
    for (int i : pairPath) {
        p.seq.push_back(g.wVertex(i));
        p.seq.push_back(g.bVertex(i));
    }
    return p;
}

UndirectedGraph matchedToLabeled(const MatchedBipartite& g) {
    const int n = g.halfOrder();
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g.edge(i, j)) edges.emplace_back(i, n + j);
    return UndirectedGraph(2 * n, edges);
}

MatchedBipartite matchedFromLabeled(const UndirectedGraph& g) {
    if (g.order() % 2 != 0 || g.order() == 0)
        throw DomainError("a matched graph needs a positive even order");
    const int n = g.order() / 2;
    const Mask wSide = bit(n) - 1;
    std::vector<Mask> wRows(n, 0);
    for (int i = 0; i < n; ++i) {
        if (g.adjMask(i) & wSide)
            throw DomainError("matched-graph labeling violated: edge inside the first half");
        wRows[i] = g.adjMask(i) >> n;
    }
    for (int j = 0; j < n; ++j)
        if (g.adjMask(n + j) >> n)
            throw DomainError("matched-graph labeling violated: edge inside the second half");
    for (int i = 0; i < n; ++i)
        if (!((wRows[i] >> i) & 1))
            throw DomainError("matched-graph labeling violated: missing matching edge " +
                              std::to_string(i) + "-" + std::to_string(n + i));
    return MatchedBipartite::fromWRows(n, wRows);
}

}  // namespace hamlab
