#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hamlab/errors.hpp"
#include "hamlab/graph.hpp"

namespace hamlab {

// graph6 / digraph6 text codecs.
//
// digraph6: '&' N(n) <n*n bits, row-major>.
// graph6:   N(n) <n(n-1)/2 bits, upper triangle, column-major: for each
//           column j = 1..n-1 the bits edge(0,j) .. edge(j-1,j)>.
// Bits are packed into 6-bit groups (most significant bit first), each group
// stored as one byte offset by 63.  Trailing padding bits inside the final
// group must be zero.  N(n) is a single byte n+63 for n <= 62, or '~'
// followed by three bytes encoding an 18-bit big-endian value for
// 63 <= n <= 258047.
//
// Parse errors carry the byte offset of the offending input byte.

Digraph parseDigraph6(const std::string& line);
std::string emitDigraph6(const Digraph& d);

UndirectedGraph parseGraph6(const std::string& line);
std::string emitGraph6(const UndirectedGraph& g);

// One verification-campaign result.  `conditionSlack` is empty when the
// degree condition is vacuous for the graph (no pair to evaluate);
// `familyTag` is empty when the graph belongs to no exceptional family.
struct ReportRecord {
    std::string code;  // canonical code, hex
    int order = 0;
    std::optional<std::int64_t> conditionSlack;
    bool hamiltonian = false;
    std::optional<std::string> familyTag;
    int shardId = 0;
    std::int64_t elapsedMicros = 0;

    bool operator==(const ReportRecord&) const = default;
};

// JSONL serialization with a fixed field order; lossless round trip.
std::string writeReportRecord(const ReportRecord& record);
ReportRecord readReportRecord(const std::string& line);

}  // namespace hamlab
