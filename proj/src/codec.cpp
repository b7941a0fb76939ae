#include "hamlab/codec.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <vector>

namespace hamlab {

namespace {

constexpr int kMaxEncodableOrder = 258047;  // largest order the 4-byte N(n) form covers

// Reads N(n) starting at `pos`; advances `pos` past it.
int parseOrder(const std::string& line, std::size_t& pos) {
    if (pos >= line.size()) throw ParseError("missing size byte", pos);
    unsigned char c0 = static_cast<unsigned char>(line[pos]);
    if (c0 < 63 || c0 > 126) throw ParseError("size byte out of range", pos);
    if (c0 != '~') {
        ++pos;
        return c0 - 63;
    }
    // '~' + 3 bytes: 18-bit value. (The 8-byte '~~' form exceeds any order
    // this library can hold, so it is rejected as out of range.)
    if (pos + 1 < line.size() && line[pos + 1] == '~') {
        throw ParseError("order above supported range", pos);
    }
    int n = 0;
    for (int k = 1; k <= 3; ++k) {
        if (pos + k >= line.size()) throw ParseError("truncated size field", line.size());
        unsigned char c = static_cast<unsigned char>(line[pos + k]);
        if (c < 63 || c > 126) throw ParseError("size byte out of range", pos + k);
        n = (n << 6) | (c - 63);
    }
    pos += 4;
    return n;
}

void emitOrder(int n, std::string& out) {
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= kMaxEncodableOrder) {
        out.push_back('~');
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    } else {
        throw DomainError("order too large to encode");
    }
}

// Unpacks exactly `bitCount` payload bits starting at `pos`; checks group
// count, byte range, padding zeros, and absence of trailing bytes.
std::vector<char> parsePayload(const std::string& line, std::size_t pos, std::size_t bitCount) {
    const std::size_t groups = (bitCount + 5) / 6;
    std::vector<char> bits;
    bits.reserve(groups * 6);
    for (std::size_t g = 0; g < groups; ++g) {
        if (pos + g >= line.size()) throw ParseError("truncated payload", line.size());
        unsigned char c = static_cast<unsigned char>(line[pos + g]);
        if (c < 63 || c > 126) throw ParseError("payload byte out of range", pos + g);
        int value = c - 63;
        for (int k = 5; k >= 0; --k) bits.push_back((value >> k) & 1);
    }
    if (pos + groups != line.size()) throw ParseError("trailing bytes after payload", pos + groups);
    for (std::size_t t = bitCount; t < bits.size(); ++t) {
        if (bits[t]) throw ParseError("nonzero padding bits", pos + t / 6);
    }
    bits.resize(bitCount);
    return bits;
}

void emitPayload(const std::vector<char>& bits, std::string& out) {
    for (std::size_t g = 0; g * 6 < bits.size(); ++g) {
        int value = 0;
        for (std::size_t k = 0; k < 6; ++k) {
            std::size_t t = g * 6 + k;
            value = (value << 1) | (t < bits.size() && bits[t] ? 1 : 0);
        }
        out.push_back(static_cast<char>(value + 63));
    }
}

}  // namespace

Digraph parseDigraph6(const std::string& line) {
    if (line.empty()) throw ParseError("empty line", 0);
    if (line[0] != '&') throw ParseError("missing digraph6 header '&'", 0);
    std::size_t pos = 1;
    int n = parseOrder(line, pos);
    if (n > kMaxOrder) throw CapabilityError("digraph order above in-memory cap");
    std::vector<char> bits = parsePayload(line, pos, static_cast<std::size_t>(n) * n);
    std::vector<Mask> rows(n, 0);
    std::size_t t = 0;
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (bits[t++]) {
                if (u == v) throw ParseError("loop bit set on diagonal", pos + (t - 1) / 6);
                rows[u] |= bit(v);
            }
        }
    }
    return Digraph::fromOutRows(n, rows);
}

std::string emitDigraph6(const Digraph& d) {
    const int n = d.order();
    std::string out = "&";
    emitOrder(n, out);
    std::vector<char> bits;
    bits.reserve(static_cast<std::size_t>(n) * n);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) bits.push_back(d.arc(u, v) ? 1 : 0);
    }
    emitPayload(bits, out);
    return out;
}

UndirectedGraph parseGraph6(const std::string& line) {
    if (line.empty()) throw ParseError("empty line", 0);
    if (line[0] == '&') throw ParseError("digraph6 header in graph6 input", 0);
    std::size_t pos = 0;
    int n = parseOrder(line, pos);
    if (n > kMaxOrder) throw CapabilityError("graph order above in-memory cap");
    std::vector<char> bits =
        parsePayload(line, pos, static_cast<std::size_t>(n) * (n - 1) / 2);
    std::vector<Mask> rows(n, 0);
    std::size_t t = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            if (bits[t++]) {
                rows[i] |= bit(j);
                rows[j] |= bit(i);
            }
        }
    }
    return UndirectedGraph::fromRows(n, rows);
}

std::string emitGraph6(const UndirectedGraph& g) {
    const int n = g.order();
    std::string out;
    emitOrder(n, out);
    std::vector<char> bits;
    bits.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) bits.push_back(g.edge(i, j) ? 1 : 0);
    }
    emitPayload(bits, out);
    return out;
}

std::string writeReportRecord(const ReportRecord& record) {
    nlohmann::ordered_json j;
    j["code"] = record.code;
    j["order"] = record.order;
    if (record.conditionSlack) {
        j["conditionSlack"] = *record.conditionSlack;
    } else {
        j["conditionSlack"] = nullptr;
    }
    j["hamiltonian"] = record.hamiltonian;
    if (record.familyTag) {
        j["familyTag"] = *record.familyTag;
    } else {
        j["familyTag"] = nullptr;
    }
    j["shardId"] = record.shardId;
    j["elapsedMicros"] = record.elapsedMicros;
    return j.dump();
}

ReportRecord readReportRecord(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bad report record: ") + e.what(),
                         static_cast<std::size_t>(e.byte > 0 ? e.byte - 1 : 0));
    }
    ReportRecord record;
    try {
        record.code = j.at("code").get<std::string>();
        record.order = j.at("order").get<int>();
        if (!j.at("conditionSlack").is_null()) {
            record.conditionSlack = j.at("conditionSlack").get<std::int64_t>();
        }
        record.hamiltonian = j.at("hamiltonian").get<bool>();
        if (!j.at("familyTag").is_null()) {
            record.familyTag = j.at("familyTag").get<std::string>();
        }
        record.shardId = j.at("shardId").get<int>();
        record.elapsedMicros = j.at("elapsedMicros").get<std::int64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad report record: ") + e.what(), 0);
    }
    return record;
}

}  // namespace hamlab
