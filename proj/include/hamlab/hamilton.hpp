#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <vector>

#include "hamlab/bipartite.hpp"
#include "hamlab/errors.hpp"
#include "hamlab/graph.hpp"

namespace hamlab {

// Exact-search size limits.  The solvers refuse larger inputs instead of
// silently approximating, because downstream checks rely on exactness.
inline constexpr int kExactSolveMaxOrder = 20;   // digraph order; nu <= 40 via contraction
inline constexpr int kLongestSearchMaxNu = 20;   // longest-cycle search / analyzer cap
inline constexpr int kLongestCycleListCap = 64;  // max longest cycles enumerated

// Cooperative cancellation for long searches.  A search holding a pointer to
// a token polls it periodically and throws CancelledError once cancelled.
class CancelToken {
  public:
    void cancel() { cancelled_.store(true, std::memory_order_relaxed); }
    bool isCancelled() const { return cancelled_.load(std::memory_order_relaxed); }

  private:
    std::atomic<bool> cancelled_{false};
};

// ---- Exact digraph searches (deterministic; vertices tried in input order).

// Directed Hamilton cycle, reported as a vertex sequence starting at vertex 0.
// Requires order >= 2; order above kExactSolveMaxOrder is a capability error.
std::optional<std::vector<int>> findHamiltonCycle(const Digraph& d,
                                                  const CancelToken* token = nullptr);

// Longest directed cycle (empty result when the digraph is acyclic).  Cycles
// are normalized to start at their smallest vertex.
std::optional<std::vector<int>> longestDirectedCycle(const Digraph& d,
                                                     const CancelToken* token = nullptr);

// All distinct longest directed cycles (rotations identified by the
// smallest-start normalization), in deterministic search order, truncated at
// maxCount.
std::vector<std::vector<int>> allLongestDirectedCycles(const Digraph& d,
                                                       int maxCount = kLongestCycleListCap,
                                                       const CancelToken* token = nullptr);

// Longest simple directed path (any endpoints); empty graph yields empty path.
std::vector<int> longestDirectedPath(const Digraph& d, const CancelToken* token = nullptr);

// Every directed Hamilton path, in deterministic search order.
std::vector<std::vector<int>> allDirectedHamiltonPaths(const Digraph& d,
                                                       const CancelToken* token = nullptr);

// ---- Matched-bipartite front ends (solve on the contraction, lift back).

std::optional<AlternatingCycle> findAlternatingHamiltonCycle(const MatchedBipartite& g,
                                                             const CancelToken* token = nullptr);

std::optional<AlternatingCycle> longestAlternatingCycle(const MatchedBipartite& g,
                                                        const CancelToken* token = nullptr);

// Undirected Hamilton cycle via the two-way orientation; requires order >= 3
// (a doubled edge is a directed 2-cycle but not an undirected cycle).
std::optional<std::vector<int>> findHamiltonCycleUndirected(const UndirectedGraph& g,
                                                            const CancelToken* token = nullptr);

// ---- Cycle-growing merges.
//
// Both merges take an alternating cycle c = u_0 u_1 ... u_{2m-1} (matching
// edges u_{2i} u_{2i+1}) and vertex-disjoint material, and splice the material
// into c between u_{2k-1} and u_{2k} for some k, yielding a validated cycle of
// length |c| + |material|.  When no k works they return a certificate that is
// re-checkable by direct adjacency queries.

// Certificate entry for the path merge: for the non-matching slot between
// u_{2i-1} (B) and u_{2i} (W) of c, at least one of the two required
// attachment edges is missing.
struct PathMergeEntry {
    int bOnCycle = -1;         // u_{2i-1}
    int wOnCycle = -1;         // u_{2i}
    bool missingEdgeToPathEndB = false;  // u_{2i} is not adjacent to p's B end
    bool missingEdgeToPathEndW = false;  // u_{2i-1} is not adjacent to p's W end
};

struct PathMergeOutcome {
    std::optional<AlternatingCycle> merged;  // set on success
    std::vector<PathMergeEntry> blocked;     // one entry per slot when blocked
    bool succeeded() const { return merged.has_value(); }
};

// Splices a closed alternating path p (ends: front W, back B) into c.
// Succeeds iff some slot k has both edges u_{2k-1}-front(p) and u_{2k}-back(p);
// the result is u_{2k} c+ u_{2k-1} front(p) p back(p) u_{2k}.  Inputs must be
// valid, vertex-disjoint, and live inside g.
PathMergeOutcome mergePathIntoCycle(const MatchedBipartite& g, const AlternatingCycle& c,
                                    const AlternatingPath& p);

// Certificate entry for the cycle merge: either one side of the slot sends no
// edge at all to c1, or both sides attach but never to two consecutive
// vertices c1[2j-1], c1[2j] (so no full splice of c1 exists at this slot).
struct CycleMergeEntry {
    int bOnCycle = -1;            // u_{2i-1}
    int wOnCycle = -1;            // u_{2i}
    bool bSideDetached = false;   // u_{2i-1} has no neighbor on c1
    bool wSideDetached = false;   // u_{2i} has no neighbor on c1
    // both flags false: attached on both sides but misaligned everywhere
};

struct CycleMergeOutcome {
    std::optional<AlternatingCycle> merged;
    std::vector<CycleMergeEntry> blocked;
    bool succeeded() const { return merged.has_value(); }
};

// Splices the whole cycle c1 into c.  Succeeds iff some slot k and position j
// have edges u_{2k-1}-c1[2j] and u_{2k}-c1[2j-1]; then c1 is traversed in full
// from c1[2j] to c1[2j-1] and the merged cycle has length |c| + |c1|.
CycleMergeOutcome mergeCycleIntoCycle(const MatchedBipartite& g, const AlternatingCycle& c,
                                      const AlternatingCycle& c1);

// ---- Constructive solver: grow a cycle by merges, fall back to exact search.

struct SolveStep {
    enum class Kind { initialCycle, mergePath, mergeCycle, exactFallback };
    Kind kind;
    int cycleLength = 0;  // alternating-cycle length after this step (0 = none)
    std::string note;
};

struct ConstructiveSolveResult {
    std::optional<AlternatingCycle> cycle;  // present iff a Hamilton cycle exists
    std::vector<SolveStep> steps;
};

ConstructiveSolveResult constructiveSolve(const MatchedBipartite& g,
                                          const CancelToken* token = nullptr);

// ---- Structure analyzer for non-Hamiltonian near-threshold graphs.

// Decomposition of the host graph around a longest alternating cycle C:
//   - criticalPairs: pairs off C (the critical graph G1);
//   - criticalPath:  closed alternating Hamilton path P1 of G1;
//   - centralPath R and oppositePath P2 partition C; R runs from the anchor
//     adjacent to P1's back end to the anchor adjacent to P1's front end, and
//     P2 is globally shortest over all longest cycles, critical paths, and
//     anchor choices.
struct StructureDecomposition {
    AlternatingCycle longestCycle;   // C
    std::vector<int> criticalPairs;  // pair indices of G1, ascending
    AlternatingPath criticalPath;    // P1 (global vertex ids)
    AlternatingPath oppositePath;    // P2 (consecutive run of C)
    AlternatingPath centralPath;     // R  (the rest of C)
    int anchorIntoCritical = -1;     // B vertex on C adjacent to criticalPath front; = centralPath back
    int anchorFromCritical = -1;     // W vertex on C adjacent to criticalPath back;  = centralPath front
};

// Classification of one non-matching edge (b, w) of the central path by which
// side of the decomposition each endpoint fully attaches to.
struct CentralEdgeClass {
    int bVertex = -1;  // earlier endpoint (B side)
    int wVertex = -1;  // later endpoint (W side)
    bool bCoversCriticalW = false;  // b adjacent to every W vertex of G1
    bool wCoversCriticalB = false;  // w adjacent to every B vertex of G1
    bool bCoversOppositeW = false;  // b adjacent to every W vertex of G2
    bool wCoversOppositeB = false;  // w adjacent to every B vertex of G2
};

struct EdgeTypeTally {
    std::vector<CentralEdgeClass> edges;
    // Exactly one critical-side flag and one opposite-side flag per edge.
    bool resolved = true;
    int t11 = 0;  // bCoversCriticalW  & bCoversOppositeW
    int t12 = 0;  // bCoversCriticalW  & wCoversOppositeB
    int t21 = 0;  // wCoversCriticalB  & bCoversOppositeW
    int t22 = 0;  // wCoversCriticalB  & wCoversOppositeB
    int t1() const { return t11; }
    int t2() const { return t22; }
    int t0() const { return t12; }  // meaningful when t12 == t21
};

struct ClaimResult {
    std::string name;
    bool applicable = true;
    bool holds = false;  // set true for non-applicable claims as well
    std::string detail;
    bool passed() const { return !applicable || holds; }
};

struct AnalysisResult {
    bool hamiltonian = false;
    std::optional<AlternatingCycle> hamiltonCycle;      // set when hamiltonian
    std::optional<StructureDecomposition> decomposition;
    std::optional<EdgeTypeTally> tally;                 // set with decomposition
    std::vector<ClaimResult> claims;
    bool allClaimsPass() const;
};

// Requires the degree-sum condition within one of the threshold
// (lasVergnas slack >= -1 or vacuous); nu above kLongestSearchMaxNu is a
// capability error.  Hamiltonian inputs short-circuit with the cycle.
AnalysisResult analyzeStructure(const MatchedBipartite& g, const CancelToken* token = nullptr);

}  // namespace hamlab
