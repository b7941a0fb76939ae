#pragma once

// Canonical codes for isomorphism testing and deduplication.
//
// The code of a graph is [order byte][bits of the relabeled adjacency
// matrix], where the relabeling is chosen to minimize the bit string over
// all vertex permutations.  Bits are laid out in "staircase" order (when
// vertex k is placed, first the arcs from the already-placed vertices into
// k, then the arcs from k back) so that a prefix of the string is fully
// determined by a prefix of the permutation and the search can prune.
// Degree/neighborhood refinement restricts the permutations considered;
// only refinement-respecting permutations can realize the minimum, so the
// result is a true isomorphism invariant.
//
// Two matched bipartite graphs are considered isomorphic when some bijection
// maps M to M; it may swap the W and B sides.  Side-preserving isomorphisms
// are exactly digraph isomorphisms of the contraction, and a side swap is a
// digraph isomorphism onto the converse, so the matched code is the smaller
// of the two digraph codes.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "hamlab/bipartite.hpp"
#include "hamlab/graph.hpp"

namespace hamlab {

constexpr int kDefaultCanonicalCap = 12;

struct CanonicalCode {
    std::vector<std::uint8_t> bytes;

    auto operator<=>(const CanonicalCode&) const = default;
    std::string hex() const;
    static CanonicalCode fromHex(const std::string& hex);
};

CanonicalCode canonicalCode(const Digraph& d, int cap = kDefaultCanonicalCap);
CanonicalCode canonicalCode(const UndirectedGraph& g, int cap = kDefaultCanonicalCap);
CanonicalCode canonicalCode(const MatchedBipartite& g, int cap = kDefaultCanonicalCap);

// Rebuild the canonical representative a code denotes.
Digraph decodeDigraphCode(const CanonicalCode& code);
UndirectedGraph decodeGraphCode(const CanonicalCode& code);

inline bool isomorphic(const Digraph& a, const Digraph& b, int cap = kDefaultCanonicalCap) {
    return a.order() == b.order() && canonicalCode(a, cap) == canonicalCode(b, cap);
}
inline bool isomorphic(const UndirectedGraph& a, const UndirectedGraph& b,
                       int cap = kDefaultCanonicalCap) {
    return a.order() == b.order() && canonicalCode(a, cap) == canonicalCode(b, cap);
}
inline bool isomorphic(const MatchedBipartite& a, const MatchedBipartite& b,
                       int cap = kDefaultCanonicalCap) {
    return a.halfOrder() == b.halfOrder() && canonicalCode(a, cap) == canonicalCode(b, cap);
}

}  // namespace hamlab
