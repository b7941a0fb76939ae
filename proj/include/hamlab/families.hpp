#pragma once

#include <optional>
#include <span>
#include <string>

#include "hamlab/bipartite.hpp"
#include "hamlab/canonical.hpp"
#include "hamlab/errors.hpp"
#include "hamlab/graph.hpp"

namespace hamlab {

inline constexpr int kRecognitionMaxOrder = 16;

// Exceptional-family catalogue.
//
// Directed kinds (threshold-minus-one Woodall exceptions):
//   D1(n,m):       complete digraphs on n+1 and m+1 vertices sharing one vertex.
//   D2(n,inner):   an independent set of n+1 vertices joined by two-way arcs
//                  to every vertex of an arbitrary digraph on n vertices.
//   D3(n,fwd,bwd): a fixed 4-vertex pattern a,b,c,d with arcs a->b->c->d->a
//                  and a<->c, optional arcs b->d (fwd) and d->b (bwd), where
//                  b and d are two-way joined to a complete digraph on n
//                  vertices and a, c are detached from it.
//   D4:            a single 7-vertex digraph, stored as a canonical code.
// Matched-bipartite kinds G1..G4 are the pair expansions of D1..D4.
// Undirected kinds (Ore-minus-one exceptions):
//   G5(n,m):       complete graphs on n+1 and m+1 vertices sharing one vertex.
//   G6(n,inner):   n+1 independent vertices completely joined to an arbitrary
//                  graph on n vertices.
// Primed kinds name the sub-families appearing in the all-pairs variant:
//   D1'(n) = D1(n,n); D3'(fwd,bwd) = D3(1,fwd,bwd).
enum class FamilyKind { d1, d2, d3, d4, g1, g2, g3, g4, g5, g6, d1Prime, d3Prime };

struct FamilyTag {
    FamilyKind kind;
    int n = 0;
    int m = 0;                 // d1/g1/g5 second block size
    bool optForward = false;   // d3/g3: arc b->d (edge between pairs 1 and 3)
    bool optBackward = false;  // d3/g3: arc d->b
    std::string innerCode;     // canonical code (hex) of the arbitrary inner graph

    std::string str() const;
    bool operator==(const FamilyTag&) const = default;

    static FamilyTag d1(int n, int m);
    static FamilyTag d2(int n, const Digraph& inner);
    static FamilyTag d3(int n, bool optForward, bool optBackward);
    static FamilyTag d4();
    static FamilyTag g1(int n, int m);
    static FamilyTag g2(int n, const MatchedBipartite& inner);
    // Builds a G2 tag from plain inner bipartite adjacency (W rows over B
    // columns); throws a domain error when the inner graph has no perfect
    // matching.
    static FamilyTag g2FromRows(int n, int innerHalfOrder, std::span<const Mask> innerWRows);
    static FamilyTag g3(int n, bool optForward, bool optBackward);
    static FamilyTag g4();
    static FamilyTag g5(int n, int m);
    static FamilyTag g6(int n, const UndirectedGraph& inner);
    static FamilyTag d1Prime(int n);
    static FamilyTag d3Prime(bool optForward, bool optBackward);
};

// The stored 7-vertex constant (canonical digraph code, hex).  Produced by the
// constrained search `deriveG4` in the verifier module and frozen here.
const std::string& d4CanonicalHex();

// Constructors.  Parameters outside the legal range (n, m >= 1; inner order
// matching n) are domain errors.
Digraph buildDirected(const FamilyTag& tag);            // d1/d2/d3/d4, d1'/d3'
MatchedBipartite buildBipartite(const FamilyTag& tag);  // g1/g2/g3/g4
UndirectedGraph buildUndirected(const FamilyTag& tag);  // g5/g6

// Recognizers.  A returned tag always rebuilds to a graph isomorphic to the
// input; absence means the input is in none of the families.  Overlapping
// memberships resolve by fixed precedence D1 < D2 < D3 < D4 and G5 < G6.
std::optional<FamilyTag> recognizeDirected(const Digraph& d, int cap = kRecognitionMaxOrder);
std::optional<FamilyTag> recognizeBipartite(const MatchedBipartite& g,
                                            int cap = kRecognitionMaxOrder);
std::optional<FamilyTag> recognizeUndirected(const UndirectedGraph& g,
                                             int cap = kRecognitionMaxOrder);

// Maps a directed-family tag to its sub-family allowed under the all-pairs
// degree condition: D1 with n = m, any D2, D3 with n = 1, and D4.  Absence
// means the family member is excluded by the stronger condition.
std::optional<FamilyTag> toTheorem14Tag(const FamilyTag& tag);

}  // namespace hamlab
