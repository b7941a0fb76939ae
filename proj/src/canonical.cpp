#include "hamlab/canonical.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "hamlab/correspondence.hpp"

namespace hamlab {

namespace {

// Iterated neighborhood refinement.  Returns one color per vertex; colors are
// dense ranks of label-independent keys, so ascending color order is itself a
// canonical ordering of the color classes.
std::vector<int> refineColors(int n, const std::vector<Mask>& out, const std::vector<Mask>& in) {
    std::vector<int> color(n, 0);
    // Initial key: (outDegree, inDegree).
    {
        std::vector<std::pair<std::pair<int, int>, int>> keyed(n);
        for (int v = 0; v < n; ++v) {
            keyed[v] = {{std::popcount(out[v]), std::popcount(in[v])}, v};
        }
        std::sort(keyed.begin(), keyed.end());
        int rank = 0;
        for (int t = 0; t < n; ++t) {
            if (t > 0 && keyed[t].first != keyed[t - 1].first) ++rank;
            color[keyed[t].second] = rank;
        }
    }
    for (int round = 0; round < n; ++round) {
        // Key: (own color, sorted colors of out-neighbors, sorted of in-).
        std::vector<std::vector<int>> key(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int>& k = key[v];
            k.push_back(color[v]);
            std::vector<int> nb;
            for (Mask row : {out[v], in[v]}) {
                nb.clear();
                Mask m = row;
                while (m) {
                    nb.push_back(color[std::countr_zero(m)]);
                    m &= m - 1;
                }
                std::sort(nb.begin(), nb.end());
                k.push_back(static_cast<int>(nb.size()));
                k.insert(k.end(), nb.begin(), nb.end());
            }
        }
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[v] = v;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return key[a] < key[b]; });
        std::vector<int> next(n, 0);
        int rank = 0;
        for (int t = 0; t < n; ++t) {
            if (t > 0 && key[order[t]] != key[order[t - 1]]) ++rank;
            next[order[t]] = rank;
        }
        if (next == color) break;
        color = std::move(next);
    }
    return color;
}

// Minimal staircase bit string over permutations that list color classes in
// ascending color order.  `directed` controls whether both arc directions are
// emitted per step.
struct MinimalSearch {
    int n;
    bool directed;
    const std::vector<Mask>* out;
    const std::vector<Mask>* in;
    std::vector<std::vector<int>> classes;  // vertices per color, ascending color

    std::vector<int> placed;
    std::vector<char> bits;
    std::vector<char> best;
    bool haveBest = false;

    void run() {
        placed.clear();
        bits.clear();
        best.clear();
        haveBest = false;
        dfs(0, /*tied=*/true);
    }

    // stepBits for placing v as position k: arcs placed->v then v->placed
    // (directed), or just placed-v edges (undirected).
    void appendStep(int v, std::vector<char>& sink) const {
        for (int u : placed) sink.push_back(((*out)[u] >> v) & 1);
        if (directed) {
            for (int u : placed) sink.push_back(((*out)[v] >> u) & 1);
        }
    }

    void dfs(std::size_t classIdx, bool tied) {
        if (classIdx >= classes.size()) {
            // Per-step pruning guarantees bits <= best whenever we get here.
            if (!haveBest || bits < best) {
                best = bits;
                haveBest = true;
            }
            return;
        }
        permuteClass(classIdx, 0, tied);
    }

    // True when exchanging u and v maps the graph onto itself.  Trying both
    // as the next placement then explores identical bit-string subtrees, so
    // one of them can be skipped.  This keeps homogeneous vertex groups
    // (independent sets, clique blocks, matched partners) from exploding the
    // tie-exploration factorially.
    bool swapIsAutomorphism(int u, int v) const {
        const Mask bu = bit(u), bv = bit(v);
        auto swapped = [&](Mask m) {
            Mask r = m & ~(bu | bv);
            if (m & bu) r |= bv;
            if (m & bv) r |= bu;
            return r;
        };
        return (*out)[u] == swapped((*out)[v]) && (*in)[u] == swapped((*in)[v]);
    }

    void permuteClass(std::size_t classIdx, std::size_t depth, bool tied) {
        std::vector<int>& cls = classes[classIdx];
        if (depth == cls.size()) {
            dfs(classIdx + 1, tied);
            return;
        }
        for (std::size_t pick = depth; pick < cls.size(); ++pick) {
            bool redundant = false;
            for (std::size_t prev = depth; prev < pick && !redundant; ++prev)
                redundant = swapIsAutomorphism(cls[prev], cls[pick]);
            if (redundant) continue;
            std::swap(cls[depth], cls[pick]);
            int v = cls[depth];
            std::size_t mark = bits.size();
            appendStep(v, bits);
            bool proceed = true;
            bool childTied = tied;
            if (haveBest && tied) {
                // Compare the freshly emitted bits with best at same offsets.
                for (std::size_t t = mark; t < bits.size(); ++t) {
                    if (bits[t] < best[t]) {
                        childTied = false;
                        break;
                    }
                    if (bits[t] > best[t]) {
                        proceed = false;
                        break;
                    }
                }
            }
            if (proceed) {
                placed.push_back(v);
                permuteClass(classIdx, depth + 1, childTied);
                placed.pop_back();
            }
            bits.resize(mark);
            std::swap(cls[depth], cls[pick]);
        }
    }
};

CanonicalCode packCode(int n, const std::vector<char>& bits) {
    CanonicalCode code;
    code.bytes.push_back(static_cast<std::uint8_t>(n));
    std::uint8_t cur = 0;
    int fill = 0;
    for (char b : bits) {
        cur = static_cast<std::uint8_t>((cur << 1) | (b ? 1 : 0));
        if (++fill == 8) {
            code.bytes.push_back(cur);
            cur = 0;
            fill = 0;
        }
    }
    if (fill > 0) code.bytes.push_back(static_cast<std::uint8_t>(cur << (8 - fill)));
    return code;
}

std::vector<char> unpackBits(const CanonicalCode& code, std::size_t count) {
    std::vector<char> bits;
    bits.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        std::size_t byteIdx = 1 + t / 8;
        if (byteIdx >= code.bytes.size()) throw DomainError("canonical code too short");
        bits.push_back((code.bytes[byteIdx] >> (7 - t % 8)) & 1);
    }
    return bits;
}

CanonicalCode canonicalCodeImpl(int n, bool directed, const std::vector<Mask>& out,
                                const std::vector<Mask>& in, int cap) {
    if (n > cap) {
        throw CapabilityError("canonicalization cap " + std::to_string(cap) +
                              " exceeded (order " + std::to_string(n) + ")");
    }
    if (n == 0) return packCode(0, {});
    std::vector<int> color = refineColors(n, out, in);
    int maxColor = *std::max_element(color.begin(), color.end());
    std::vector<std::vector<int>> classes(maxColor + 1);
    for (int v = 0; v < n; ++v) classes[color[v]].push_back(v);
    MinimalSearch search{n, directed, &out, &in, std::move(classes), {}, {}, {}, false};
    search.run();
    return packCode(n, search.best);
}

}  // namespace

std::string CanonicalCode::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 15]);
    }
    return s;
}

CanonicalCode CanonicalCode::fromHex(const std::string& hex) {
    if (hex.size() % 2 != 0) throw DomainError("hex code must have even length");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw DomainError("bad hex digit in canonical code");
    };
    CanonicalCode code;
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        code.bytes.push_back(static_cast<std::uint8_t>((nibble(hex[i]) << 4) | nibble(hex[i + 1])));
    }
    return code;
}

CanonicalCode canonicalCode(const Digraph& d, int cap) {
    const int n = d.order();
    std::vector<Mask> out(n), in(n);
    for (int v = 0; v < n; ++v) {
        out[v] = d.outMask(v);
        in[v] = d.inMask(v);
    }
    return canonicalCodeImpl(n, /*directed=*/true, out, in, cap);
}

CanonicalCode canonicalCode(const UndirectedGraph& g, int cap) {
    const int n = g.order();
    std::vector<Mask> adj(n);
    for (int v = 0; v < n; ++v) adj[v] = g.adjMask(v);
    return canonicalCodeImpl(n, /*directed=*/false, adj, adj, cap);
}

CanonicalCode canonicalCode(const MatchedBipartite& g, int cap) {
    Digraph d = contract(g);
    return std::min(canonicalCode(d, cap), canonicalCode(converse(d), cap));
}

Digraph decodeDigraphCode(const CanonicalCode& code) {
    if (code.bytes.empty()) throw DomainError("empty canonical code");
    const int n = code.bytes[0];
    std::vector<char> bits = unpackBits(code, static_cast<std::size_t>(n) * (n - 1));
    std::vector<Mask> rows(n, 0);
    std::size_t t = 0;
    for (int k = 0; k < n; ++k) {
        for (int u = 0; u < k; ++u) {
            if (bits[t++]) rows[u] |= bit(k);
        }
        for (int u = 0; u < k; ++u) {
            if (bits[t++]) rows[k] |= bit(u);
        }
    }
    return Digraph::fromOutRows(n, rows);
}

UndirectedGraph decodeGraphCode(const CanonicalCode& code) {
    if (code.bytes.empty()) throw DomainError("empty canonical code");
    const int n = code.bytes[0];
    std::vector<char> bits = unpackBits(code, static_cast<std::size_t>(n) * (n - 1) / 2);
    std::vector<Mask> rows(n, 0);
    std::size_t t = 0;
    for (int k = 0; k < n; ++k) {
        for (int u = 0; u < k; ++u) {
            if (bits[t++]) {
                rows[u] |= bit(k);
                rows[k] |= bit(u);
            }
        }
    }
    return UndirectedGraph::fromRows(n, rows);
}

}  // namespace hamlab
