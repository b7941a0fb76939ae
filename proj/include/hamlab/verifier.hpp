#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hamlab/bipartite.hpp"
#include "hamlab/conditions.hpp"
#include "hamlab/families.hpp"
#include "hamlab/graph.hpp"
#include "hamlab/hamilton.hpp"

namespace hamlab {

inline constexpr int kEnumerationMaxDigraphOrder = 6;
inline constexpr int kEnumerationMaxUndirectedOrder = 7;

// Partition of the labeled enumeration keyspace.  `count` must be a power of
// two; the first log2(count) arc slots are pinned to the bits of `index`, so
// shard streams are pairwise disjoint and their union is the full stream.
struct EnumerationShard {
    int index = 0;
    int count = 1;
};

// Restricts an enumeration stream to graphs whose degree-sum slack under
// `mode` is at least `minSlack` (vacuous instances pass).  Partial graphs
// whose optimistic completion ceiling already violates the floor are pruned
// with their whole subtree; the surviving leaves are re-checked exactly, so
// the filtered stream equals a post-hoc filter of the unfiltered stream.
struct SlackFilter {
    ConditionMode mode = ConditionMode::woodallNonArc;
    int minSlack = -1;
};

// Every labeled loop-free digraph of the order, in a fixed deterministic
// order.  Digraph modes of SlackFilter only.
void enumerateDigraphs(int order, EnumerationShard shard, const std::optional<SlackFilter>& filter,
                       const std::function<void(const Digraph&)>& visit,
                       CancelToken* token = nullptr);

// Every labeled simple graph of the order.  Undirected modes only.
void enumerateUndirected(int order, EnumerationShard shard,
                         const std::optional<SlackFilter>& filter,
                         const std::function<void(const UndirectedGraph&)>& visit,
                         CancelToken* token = nullptr);

// The four verification campaigns.
//   theorem11: digraphs, non-arc degree-sum floor |D|-1, exceptions D1/D2/D3/D4.
//   theorem14: digraphs, all-pairs floor |D|-1, exceptions D1'/D2/D3'/D4.
//   theorem12: pair expansions of digraphs, matched floor nu/2+1, G1..G4.
//   corollary: simple graphs, nonadjacent floor |G|-1, exceptions G5/G6.
enum class VerifyVariant { theorem11, theorem12, theorem14, corollary };

const char* verifyVariantName(VerifyVariant variant);
std::optional<VerifyVariant> verifyVariantFromName(const std::string& name);

// One isomorphism class found non-Hamiltonian despite satisfying the relaxed
// condition.  `family` is computed on the canonical representative (so it is
// independent of which labeled copy a shard meets first); empty means the
// class is outside the catalogue and the theorem is not certified.
struct ExceptionClass {
    std::string code;  // canonical code, hex
    std::optional<std::string> family;
    std::int64_t labeledCount = 0;

    bool operator==(const ExceptionClass&) const = default;
};

struct VerifyReport {
    std::string variant;
    int order = 0;
    int shardId = 0;  // -1 for a merged report
    int shardCount = 1;
    std::int64_t totalLabeled = 0;         // size of the shard's keyspace
    std::int64_t conditionSatisfying = 0;  // slack >= -1 (or vacuous)
    std::int64_t hamiltonianCount = 0;     // condition-satisfying and Hamiltonian
    std::int64_t strictSatisfying = 0;     // slack >= 0 (or vacuous)
    std::int64_t strictViolations = 0;     // slack >= 0 yet non-Hamiltonian (expected 0)
    std::vector<ExceptionClass> exceptions;  // sorted by code
    std::int64_t elapsedMicros = 0;          // 0 unless timing was requested

    std::int64_t exceptionLabeledTotal() const;
    std::vector<std::string> unrecognized() const;  // codes lacking a family tag
    // Every condition-satisfying graph is classified exactly once.
    bool conservationHolds() const;
    bool certified() const;  // unrecognized().empty()

    std::string toJsonLine() const;
    static VerifyReport fromJsonLine(const std::string& line);

    bool operator==(const VerifyReport&) const = default;
};

struct VerifyOptions {
    EnumerationShard shard;
    bool recordElapsed = false;
    CancelToken* token = nullptr;
};

VerifyReport verifyMainTheorem(int order, VerifyVariant variant, const VerifyOptions& opts = {});

// Runs every shard (round-robin over `threads` workers, no shared mutable
// state) and returns the per-shard reports in shard order.
std::vector<VerifyReport> verifyAllShards(int order, VerifyVariant variant, int shardCount,
                                          int threads, bool recordElapsed = false,
                                          CancelToken* token = nullptr);

// Pure reducer over same-campaign shard reports; result has shardId -1.
VerifyReport mergeReports(std::span<const VerifyReport> reports);

// Constrained search for the 7-pair exception: the skeleton fixes one
// off-cycle pair, a five-pair arc of the longest cycle, and a sixth cycle
// pair with fully forced attachments; the 16 undetermined arcs inside the
// five-pair arc are enumerated exhaustively.  Survivors satisfy slack >= -1,
// are non-Hamiltonian, and sit outside the smaller families; they are then
// grouped up to matched isomorphism.
struct DeriveG4Result {
    std::vector<MatchedBipartite> classes;  // canonical representative each
    std::vector<std::string> classCodes;    // matched canonical code, hex
    std::int64_t assignmentsTried = 0;
    std::int64_t labeledSurvivors = 0;
};

DeriveG4Result deriveG4(CancelToken* token = nullptr);

}  // namespace hamlab
