#include "hamlab/bipartite.hpp"

#include <algorithm>
#include <bit>

namespace hamlab {

MatchedBipartite MatchedBipartite::fromEdges(int halfOrder,
                                             std::span<const std::pair<int, int>> wbEdges,
                                             std::span<const std::pair<int, int>> matching) {
    if (halfOrder < 1) throw DomainError("matched bipartite graph needs at least one pair");
    if (halfOrder > kMaxOrder) throw CapabilityError("half order exceeds the cap of 64");
    if (static_cast<int>(matching.size()) != halfOrder) {
        throw DomainError("matching must have exactly one edge per pair");
    }
    // bOf[w] = input b-label matched with input w-label.
    std::vector<int> bOf(halfOrder, -1), wSeen(halfOrder, 0), bSeen(halfOrder, 0);
    for (auto [w, b] : matching) {
        if (w < 0 || w >= halfOrder || b < 0 || b >= halfOrder) {
            throw DomainError("matching index out of range");
        }
        if (wSeen[w]++ || bSeen[b]++) throw DomainError("matching is not a bijection");
        bOf[w] = b;
    }
    // Relabel the B side: input b-label bOf[i] becomes i.
    std::vector<int> newBLabel(halfOrder, -1);
    for (int i = 0; i < halfOrder; ++i) newBLabel[bOf[i]] = i;

    std::vector<Mask> rows(halfOrder, 0);
    for (auto [w, b] : wbEdges) {
        if (w < 0 || w >= halfOrder || b < 0 || b >= halfOrder) {
            throw DomainError("edge index out of range");
        }
        rows[w] |= bit(newBLabel[b]);
    }
    for (int i = 0; i < halfOrder; ++i) {
        if (!((rows[i] >> i) & 1)) throw DomainError("matching edge missing from edge set");
    }
    return fromWRows(halfOrder, rows);
}

MatchedBipartite MatchedBipartite::fromWRows(int halfOrder, std::span<const Mask> wRows) {
    if (halfOrder < 1) throw DomainError("matched bipartite graph needs at least one pair");
    if (halfOrder > kMaxOrder) throw CapabilityError("half order exceeds the cap of 64");
    if (static_cast<int>(wRows.size()) != halfOrder) throw DomainError("row count mismatch");
    MatchedBipartite g;
    g.n_ = halfOrder;
    g.wAdj_.assign(wRows.begin(), wRows.end());
    g.bAdj_.assign(halfOrder, 0);
    Mask valid = halfOrder == 64 ? ~Mask{0} : (bit(halfOrder) - 1);
    for (int i = 0; i < halfOrder; ++i) {
        if (g.wAdj_[i] & ~valid) throw DomainError("adjacency row has bits beyond the order");
        if (!((g.wAdj_[i] >> i) & 1)) throw DomainError("matching edge missing from edge set");
        Mask row = g.wAdj_[i];
        while (row) {
            int j = std::countr_zero(row);
            row &= row - 1;
            g.bAdj_[j] |= bit(i);
        }
    }
    return g;
}

int MatchedBipartite::wDegree(int wIdx) const { return std::popcount(wAdj_[check(wIdx)]); }

int MatchedBipartite::bDegree(int bIdx) const { return std::popcount(bAdj_[check(bIdx)]); }

int MatchedBipartite::edgeCount() const {
    int total = 0;
    for (Mask row : wAdj_) total += std::popcount(row);
    return total;
}

bool MatchedBipartite::edgeByVertex(int x, int y) const {
    checkGlobal(x);
    checkGlobal(y);
    if (isW(x) == isW(y)) return false;
    int w = isW(x) ? x : y;
    int b = isW(x) ? y : x;
    return edge(w, b - n_);
}

bool MatchedBipartite::isMatchingEdge(int x, int y) const {
    return edgeByVertex(x, y) && pairOf(x) == pairOf(y);
}

MatchedBipartite MatchedBipartite::withEdge(int wIdx, int bIdx) const {
    check(wIdx);
    check(bIdx);
    MatchedBipartite g = *this;
    g.wAdj_[wIdx] |= bit(bIdx);
    g.bAdj_[bIdx] |= bit(wIdx);
    return g;
}

MatchedBipartite::Induced MatchedBipartite::inducedOnPairs(std::span<const int> pairIndices) const {
    std::vector<int> keep(pairIndices.begin(), pairIndices.end());
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    for (int i : keep) check(i);
    if (keep.empty()) throw DomainError("induced matched subgraph cannot be empty");
    std::vector<Mask> rows(keep.size(), 0);
    for (std::size_t a = 0; a < keep.size(); ++a) {
        for (std::size_t b = 0; b < keep.size(); ++b) {
            if (edge(keep[a], keep[b])) rows[a] |= bit(static_cast<int>(b));
        }
    }
    return {fromWRows(static_cast<int>(keep.size()), rows), std::move(keep)};
}

MatchedBipartite::Induced MatchedBipartite::inducedSubgraph(std::span<const int> vertices) const {
    std::vector<char> hasW(n_, 0), hasB(n_, 0);
    for (int v : vertices) {
        checkGlobal(v);
        (isW(v) ? hasW : hasB)[pairOf(v)] = 1;
    }
    std::vector<int> pairs;
    for (int i = 0; i < n_; ++i) {
        if (hasW[i] != hasB[i]) {
            throw DomainError("vertex set is not closed under the matching");
        }
        if (hasW[i]) pairs.push_back(i);
    }
    return inducedOnPairs(pairs);
}

std::optional<std::vector<int>> findPerfectMatching(int halfOrder, std::span<const Mask> wRows) {
    if (halfOrder < 1 || static_cast<int>(wRows.size()) != halfOrder) {
        throw DomainError("bad matching input");
    }
    std::vector<int> matchOfB(halfOrder, -1);
    std::vector<char> visited(halfOrder);
    // Standard augmenting-path search from each W vertex.
    auto tryAugment = [&](auto&& self, int w) -> bool {
        Mask row = wRows[w];
        while (row) {
            int b = std::countr_zero(row);
            row &= row - 1;
            if (visited[b]) continue;
            visited[b] = 1;
            if (matchOfB[b] == -1 || self(self, matchOfB[b])) {
                matchOfB[b] = w;
                return true;
            }
        }
        return false;
    };
    for (int w = 0; w < halfOrder; ++w) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!tryAugment(tryAugment, w)) return std::nullopt;
    }
    std::vector<int> bOfW(halfOrder, -1);
    for (int b = 0; b < halfOrder; ++b) bOfW[matchOfB[b]] = b;
    return bOfW;
}

std::vector<int> AlternatingCycle::matchingEdgeOffsets() const {
    std::vector<int> offsets;
    for (int i = 0; i + 1 < static_cast<int>(seq.size()); i += 2) offsets.push_back(i);
    return offsets;
}

namespace {

bool validSequence(const MatchedBipartite& g, const std::vector<int>& seq, bool cyclic) {
    const int len = static_cast<int>(seq.size());
    if (len < 2 || len % 2 != 0) return false;
    std::vector<char> used(g.nu(), 0);
    for (int v : seq) {
        if (v < 0 || v >= g.nu()) return false;
        if (used[v]++) return false;
    }
    if (!g.isW(seq[0])) return false;
    const int edgeCount = cyclic ? len : len - 1;
    for (int i = 0; i < edgeCount; ++i) {
        int x = seq[i], y = seq[(i + 1) % len];
        if (!g.edgeByVertex(x, y)) return false;
        bool shouldBeMatching = (i % 2 == 0);
        if (g.isMatchingEdge(x, y) != shouldBeMatching) return false;
    }
    return true;
}

}  // namespace

bool isValidAlternatingCycle(const MatchedBipartite& g, const AlternatingCycle& c) {
    return c.seq.size() >= 4 && validSequence(g, c.seq, /*cyclic=*/true);
}

bool isValidClosedAlternatingPath(const MatchedBipartite& g, const AlternatingPath& p) {
    // Closed: odd number of edges, first and last in M.
    return !p.seq.empty() && validSequence(g, p.seq, /*cyclic=*/false);
}

}  // namespace hamlab
