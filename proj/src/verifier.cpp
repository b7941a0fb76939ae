#include "hamlab/verifier.hpp"

#include <nlohmann/json.hpp>

#include <bit>
#include <chrono>
#include <exception>
#include <map>
#include <thread>
#include <utility>

#include "hamlab/canonical.hpp"
#include "hamlab/correspondence.hpp"

namespace hamlab {

namespace {

struct ArcSlot {
    int u;
    int v;
};

// Slots are grouped so that after the block of vertex k every arc among
// {0..k} has been decided; the ceiling prune runs at block boundaries.
std::vector<ArcSlot> digraphSlots(int order) {
    std::vector<ArcSlot> slots;
    for (int k = 1; k < order; ++k)
        for (int u = 0; u < k; ++u) {
            slots.push_back({u, k});
            slots.push_back({k, u});
        }
    return slots;
}

std::vector<ArcSlot> undirectedSlots(int order) {
    std::vector<ArcSlot> slots;
    for (int k = 1; k < order; ++k)
        for (int u = 0; u < k; ++u) slots.push_back({u, k});
    return slots;
}

int shardPrefixBits(EnumerationShard shard, int slotCount) {
    if (shard.count < 1 || (shard.count & (shard.count - 1)) != 0)
        throw DomainError("shard count must be a power of two");
    if (shard.index < 0 || shard.index >= shard.count)
        throw DomainError("shard index out of range");
    int bits = std::countr_zero(static_cast<unsigned>(shard.count));
    if (bits > slotCount) throw DomainError("shard count exceeds the enumeration keyspace");
    return bits;
}

class CancelPoller {
public:
    explicit CancelPoller(CancelToken* token) : token_(token) {}
    void poll() {
        if (token_ != nullptr && ++counter_ >= 4096) {
            counter_ = 0;
            if (token_->isCancelled()) throw CancelledError();
        }
    }

private:
    CancelToken* token_;
    int counter_ = 0;
};

}  // namespace

void enumerateDigraphs(int order, EnumerationShard shard, const std::optional<SlackFilter>& filter,
                       const std::function<void(const Digraph&)>& visit, CancelToken* token) {
    if (order < 1) throw DomainError("enumeration requires order >= 1");
    if (order > kEnumerationMaxDigraphOrder)
        throw CapabilityError("labeled digraph enumeration supports order <= " +
                              std::to_string(kEnumerationMaxDigraphOrder) + " (got " +
                              std::to_string(order) + "); feed digraph6 input instead");
    if (filter && filter->mode != ConditionMode::woodallNonArc &&
        filter->mode != ConditionMode::allPairs)
        throw DomainError("digraph enumeration filters support the directed pair modes only");

    const std::vector<ArcSlot> slots = digraphSlots(order);
    const int slotCount = static_cast<int>(slots.size());
    const int prefixBits = shardPrefixBits(shard, slotCount);

    std::vector<Mask> out(order, 0);
    std::vector<int> outDeg(order, 0), inDeg(order, 0);
    CancelPoller poller(token);

    // True when some already-decided witness pair can no longer reach the
    // slack floor even if every remaining arc materializes.
    auto blockPrune = [&](int completedBlock) {
        if (!filter || order < 2) return false;
        int rem = order - 1 - completedBlock;
        int need = order + filter->minSlack;
        for (int u = 0; u <= completedBlock; ++u)
            for (int v = 0; v <= completedBlock; ++v) {
                if (filter->mode == ConditionMode::woodallNonArc &&
                    (u == v || ((out[u] >> v) & 1)))
                    continue;
                if (outDeg[u] + inDeg[v] + 2 * rem < need) return true;
            }
        return false;
    };

    std::function<void(int)> go = [&](int slot) {
        poller.poll();
        if (slot == slotCount) {
            Digraph d = Digraph::fromOutRows(order, out);
            if (filter && order >= 2) {
                auto report = digraphSlack(d, filter->mode);
                if (!report.vacuous() && *report.slack < filter->minSlack) return;
            }
            visit(d);
            return;
        }
        auto [u, v] = slots[slot];
        bool atBlockEnd = slot + 1 == slotCount ||
                          std::max(slots[slot + 1].u, slots[slot + 1].v) > std::max(u, v);
        for (int val = 0; val <= 1; ++val) {
            if (slot < prefixBits && val != ((shard.index >> slot) & 1)) continue;
            if (val) {
                out[u] |= bit(v);
                ++outDeg[u];
                ++inDeg[v];
            }
            if (!(atBlockEnd && blockPrune(std::max(u, v)))) go(slot + 1);
            if (val) {
                out[u] &= ~bit(v);
                --outDeg[u];
                --inDeg[v];
            }
        }
    };
    go(0);
}

void enumerateUndirected(int order, EnumerationShard shard,
                         const std::optional<SlackFilter>& filter,
                         const std::function<void(const UndirectedGraph&)>& visit,
                         CancelToken* token) {
    if (order < 1) throw DomainError("enumeration requires order >= 1");
    if (order > kEnumerationMaxUndirectedOrder)
        throw CapabilityError("labeled graph enumeration supports order <= " +
                              std::to_string(kEnumerationMaxUndirectedOrder) + " (got " +
                              std::to_string(order) + "); feed graph6 input instead");
    if (filter && filter->mode != ConditionMode::ore)
        throw DomainError("graph enumeration filters support the nonadjacent pair mode only");

    const std::vector<ArcSlot> slots = undirectedSlots(order);
    const int slotCount = static_cast<int>(slots.size());
    const int prefixBits = shardPrefixBits(shard, slotCount);

    std::vector<Mask> adj(order, 0);
    std::vector<int> deg(order, 0);
    CancelPoller poller(token);

    auto blockPrune = [&](int completedBlock) {
        if (!filter || order < 2) return false;
        int rem = order - 1 - completedBlock;
        int need = order + filter->minSlack;
        for (int u = 0; u <= completedBlock; ++u)
            for (int v = u + 1; v <= completedBlock; ++v) {
                if ((adj[u] >> v) & 1) continue;
                if (deg[u] + deg[v] + 2 * rem < need) return true;
            }
        return false;
    };

    std::function<void(int)> go = [&](int slot) {
        poller.poll();
        if (slot == slotCount) {
            UndirectedGraph g = UndirectedGraph::fromRows(order, adj);
            if (filter) {
                auto report = undirectedSlack(g, filter->mode);
                if (!report.vacuous() && *report.slack < filter->minSlack) return;
            }
            visit(g);
            return;
        }
        auto [u, v] = slots[slot];
        bool atBlockEnd = slot + 1 == slotCount || slots[slot + 1].v > v;
        for (int val = 0; val <= 1; ++val) {
            if (slot < prefixBits && val != ((shard.index >> slot) & 1)) continue;
            if (val) {
                adj[u] |= bit(v);
                adj[v] |= bit(u);
                ++deg[u];
                ++deg[v];
            }
            if (!(atBlockEnd && blockPrune(v))) go(slot + 1);
            if (val) {
                adj[u] &= ~bit(v);
                adj[v] &= ~bit(u);
                --deg[u];
                --deg[v];
            }
        }
    };
    go(0);
}

const char* verifyVariantName(VerifyVariant variant) {
    switch (variant) {
        case VerifyVariant::theorem11: return "theorem11";
        case VerifyVariant::theorem12: return "theorem12";
        case VerifyVariant::theorem14: return "theorem14";
        case VerifyVariant::corollary: return "corollary";
    }
    throw DomainError("unknown campaign variant");
}

std::optional<VerifyVariant> verifyVariantFromName(const std::string& name) {
    if (name == "theorem11" || name == "11") return VerifyVariant::theorem11;
    if (name == "theorem12" || name == "12") return VerifyVariant::theorem12;
    if (name == "theorem14" || name == "14") return VerifyVariant::theorem14;
    if (name == "corollary" || name == "cor") return VerifyVariant::corollary;
    return std::nullopt;
}

std::int64_t VerifyReport::exceptionLabeledTotal() const {
    std::int64_t total = 0;
    for (const auto& e : exceptions) total += e.labeledCount;
    return total;
}

std::vector<std::string> VerifyReport::unrecognized() const {
    std::vector<std::string> codes;
    for (const auto& e : exceptions)
        if (!e.family) codes.push_back(e.code);
    return codes;
}

bool VerifyReport::conservationHolds() const {
    return conditionSatisfying == hamiltonianCount + exceptionLabeledTotal();
}

bool VerifyReport::certified() const { return unrecognized().empty(); }

std::string VerifyReport::toJsonLine() const {
    nlohmann::ordered_json j;
    j["variant"] = variant;
    j["order"] = order;
    j["shardId"] = shardId;
    j["shardCount"] = shardCount;
    j["totalLabeled"] = totalLabeled;
    j["conditionSatisfying"] = conditionSatisfying;
    j["hamiltonianCount"] = hamiltonianCount;
    j["strictSatisfying"] = strictSatisfying;
    j["strictViolations"] = strictViolations;
    auto list = nlohmann::ordered_json::array();
    for (const auto& e : exceptions) {
        nlohmann::ordered_json item;
        item["code"] = e.code;
        if (e.family)
            item["family"] = *e.family;
        else
            item["family"] = nullptr;
        item["labeledCount"] = e.labeledCount;
        list.push_back(std::move(item));
    }
    j["exceptions"] = std::move(list);
    j["unrecognized"] = unrecognized();
    j["elapsedMicros"] = elapsedMicros;
    return j.dump();
}

VerifyReport VerifyReport::fromJsonLine(const std::string& line) {
    try {
        auto j = nlohmann::ordered_json::parse(line);
        VerifyReport report;
        report.variant = j.at("variant").get<std::string>();
        report.order = j.at("order").get<int>();
        report.shardId = j.at("shardId").get<int>();
        report.shardCount = j.at("shardCount").get<int>();
        report.totalLabeled = j.at("totalLabeled").get<std::int64_t>();
        report.conditionSatisfying = j.at("conditionSatisfying").get<std::int64_t>();
        report.hamiltonianCount = j.at("hamiltonianCount").get<std::int64_t>();
        report.strictSatisfying = j.at("strictSatisfying").get<std::int64_t>();
        report.strictViolations = j.at("strictViolations").get<std::int64_t>();
        for (const auto& item : j.at("exceptions")) {
            ExceptionClass e;
            e.code = item.at("code").get<std::string>();
            if (!item.at("family").is_null()) e.family = item.at("family").get<std::string>();
            e.labeledCount = item.at("labeledCount").get<std::int64_t>();
            report.exceptions.push_back(std::move(e));
        }
        report.elapsedMicros = j.at("elapsedMicros").get<std::int64_t>();
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad report line: ") + e.what(), 0);
    }
}

namespace {

// The family decision for an exception class, computed on the canonical
// representative so every shard reports the same tag for the same class.
std::optional<std::string> classFamily(VerifyVariant variant, const std::string& codeHex) {
    CanonicalCode code = CanonicalCode::fromHex(codeHex);
    std::optional<FamilyTag> tag;
    switch (variant) {
        case VerifyVariant::theorem11:
            tag = recognizeDirected(decodeDigraphCode(code));
            break;
        case VerifyVariant::theorem14:
            tag = recognizeDirected(decodeDigraphCode(code));
            if (tag) tag = toTheorem14Tag(*tag);
            break;
        case VerifyVariant::theorem12:
            tag = recognizeBipartite(expand(decodeDigraphCode(code)));
            break;
        case VerifyVariant::corollary:
            tag = recognizeUndirected(decodeGraphCode(code));
            break;
    }
    if (!tag) return std::nullopt;
    return tag->str();
}

struct SurveyOutcome {
    ConditionReport slack;
    bool hamiltonian = false;
    std::string codeHex;  // filled only for non-Hamiltonian graphs
};

}  // namespace

VerifyReport verifyMainTheorem(int order, VerifyVariant variant, const VerifyOptions& opts) {
    const bool undirected = variant == VerifyVariant::corollary;
    if (undirected) {
        if (order < 3) throw DomainError("the undirected campaign requires order >= 3");
    } else {
        if (order < 2) throw DomainError("digraph campaigns require order >= 2");
    }

    ConditionMode mode;
    switch (variant) {
        case VerifyVariant::theorem11: mode = ConditionMode::woodallNonArc; break;
        case VerifyVariant::theorem14: mode = ConditionMode::allPairs; break;
        // The matched floor over the expansion coincides with the non-arc
        // floor over the digraph, so the digraph filter drives enumeration.
        case VerifyVariant::theorem12: mode = ConditionMode::woodallNonArc; break;
        case VerifyVariant::corollary: mode = ConditionMode::ore; break;
    }

    VerifyReport report;
    report.variant = verifyVariantName(variant);
    report.order = order;
    report.shardId = opts.shard.index;
    report.shardCount = opts.shard.count;
    int slotCount = undirected ? order * (order - 1) / 2 : order * (order - 1);
    report.totalLabeled = std::int64_t{1}
                          << (slotCount - shardPrefixBits(opts.shard, slotCount));

    std::map<std::string, ExceptionClass> classes;
    auto startTime = std::chrono::steady_clock::now();

    auto record = [&](const SurveyOutcome& outcome) {
        ++report.conditionSatisfying;
        bool strict = outcome.slack.vacuous() || *outcome.slack.slack >= 0;
        if (strict) ++report.strictSatisfying;
        if (outcome.hamiltonian) {
            ++report.hamiltonianCount;
            return;
        }
        if (strict) ++report.strictViolations;
        auto it = classes.find(outcome.codeHex);
        if (it == classes.end()) {
            ExceptionClass e;
            e.code = outcome.codeHex;
            e.family = classFamily(variant, outcome.codeHex);
            e.labeledCount = 1;
            classes.emplace(outcome.codeHex, std::move(e));
        } else {
            ++it->second.labeledCount;
        }
    };

    SlackFilter filter{mode, -1};
    if (undirected) {
        enumerateUndirected(
            order, opts.shard, filter,
            [&](const UndirectedGraph& g) {
                SurveyOutcome outcome{undirectedSlack(g, ConditionMode::ore),
                                      findHamiltonCycleUndirected(g, opts.token).has_value(), {}};
                if (!outcome.hamiltonian) outcome.codeHex = canonicalCode(g).hex();
                record(outcome);
            },
            opts.token);
    } else {
        enumerateDigraphs(
            order, opts.shard, filter,
            [&](const Digraph& d) {
                SurveyOutcome outcome;
                if (variant == VerifyVariant::theorem12) {
                    MatchedBipartite g = expand(d);
                    outcome.slack = bipartiteSlack(g, ConditionMode::lasVergnas);
                    outcome.hamiltonian = findAlternatingHamiltonCycle(g, opts.token).has_value();
                    if (!outcome.hamiltonian) outcome.codeHex = canonicalCode(g).hex();
                } else {
                    outcome.slack = digraphSlack(d, mode);
                    outcome.hamiltonian = findHamiltonCycle(d, opts.token).has_value();
                    if (!outcome.hamiltonian) outcome.codeHex = canonicalCode(d).hex();
                }
                record(outcome);
            },
            opts.token);
    }

    for (auto& [code, e] : classes) report.exceptions.push_back(std::move(e));
    if (opts.recordElapsed)
        report.elapsedMicros = std::chrono::duration_cast<std::chrono::microseconds>(
                                   std::chrono::steady_clock::now() - startTime)
                                   .count();
    return report;
}

std::vector<VerifyReport> verifyAllShards(int order, VerifyVariant variant, int shardCount,
                                          int threads, bool recordElapsed, CancelToken* token) {
    if (threads < 1) throw DomainError("thread count must be at least 1");
    if (shardCount < 1) throw DomainError("shard count must be at least 1");
    std::vector<VerifyReport> reports(shardCount);
    int workers = std::min(threads, shardCount);
    std::vector<std::exception_ptr> failures(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (int i = w; i < shardCount; i += workers) {
                    VerifyOptions opts;
                    opts.shard = EnumerationShard{i, shardCount};
                    opts.recordElapsed = recordElapsed;
                    opts.token = token;
                    reports[i] = verifyMainTheorem(order, variant, opts);
                }
            } catch (...) {
                failures[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& failure : failures)
        if (failure) std::rethrow_exception(failure);
    return reports;
}

VerifyReport mergeReports(std::span<const VerifyReport> reports) {
    if (reports.empty()) throw DomainError("cannot merge zero reports");
    VerifyReport merged;
    merged.variant = reports.front().variant;
    merged.order = reports.front().order;
    merged.shardId = -1;
    merged.shardCount = reports.front().shardCount;
    std::map<std::string, ExceptionClass> classes;
    std::vector<bool> seen(reports.front().shardCount, false);
    for (const auto& r : reports) {
        if (r.variant != merged.variant || r.order != merged.order ||
            r.shardCount != merged.shardCount)
            throw DomainError("cannot merge reports from different campaigns");
        if (r.shardId < 0 || r.shardId >= merged.shardCount || seen[r.shardId])
            throw DomainError("merge requires distinct shard ids");
        seen[r.shardId] = true;
        merged.totalLabeled += r.totalLabeled;
        merged.conditionSatisfying += r.conditionSatisfying;
        merged.hamiltonianCount += r.hamiltonianCount;
        merged.strictSatisfying += r.strictSatisfying;
        merged.strictViolations += r.strictViolations;
        merged.elapsedMicros += r.elapsedMicros;
        for (const auto& e : r.exceptions) {
            auto it = classes.find(e.code);
            if (it == classes.end()) {
                classes.emplace(e.code, e);
            } else {
                if (it->second.family != e.family)
                    throw DomainError("conflicting family tags for class " + e.code);
                it->second.labeledCount += e.labeledCount;
            }
        }
    }
    for (auto& [code, e] : classes) merged.exceptions.push_back(std::move(e));
    return merged;
}

DeriveG4Result deriveG4(CancelToken* token) {
    constexpr int order = 7;
    // Pair 0 sits off the longest cycle; pairs 1..5 form the renumbered arc R
    // of the cycle; pair 6 closes the cycle through the far side.  Pair 0 is
    // two-way joined to the odd arc positions and detached from the rest;
    // pair 6 is two-way joined to the even arc positions, carries the two
    // cycle arcs 5->6 and 6->1, and is otherwise detached.
    const std::vector<std::pair<int, int>> forced = {
        {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 1},  // the longest cycle
        {0, 1}, {1, 0}, {0, 3}, {3, 0}, {0, 5}, {5, 0},  // off-cycle pair joins
        {6, 2}, {2, 6}, {6, 4}, {4, 6},                  // far-side pair joins
    };
    std::vector<std::pair<int, int>> freeSlots;
    for (int u = 1; u <= 5; ++u)
        for (int v = 1; v <= 5; ++v)
            if (u != v && v != u + 1) freeSlots.emplace_back(u, v);

    DeriveG4Result result;
    std::map<std::string, MatchedBipartite> classes;
    const std::uint32_t total = std::uint32_t{1} << freeSlots.size();
    for (std::uint32_t bits = 0; bits < total; ++bits) {
        if (token != nullptr && (bits & 0xff) == 0 && token->isCancelled()) throw CancelledError();
        ++result.assignmentsTried;
        std::vector<std::pair<int, int>> arcs = forced;
        for (std::size_t i = 0; i < freeSlots.size(); ++i)
            if ((bits >> i) & 1) arcs.push_back(freeSlots[i]);
        Digraph d(order, arcs);
        auto slack = digraphSlack(d, ConditionMode::woodallNonArc);
        if (!slack.vacuous() && *slack.slack < -1) continue;
        if (findHamiltonCycle(d, token)) continue;
        // Exclude the families already characterized; a match with the stored
        // seven-vertex constant itself (present once it is frozen) stays in.
        if (auto tag = recognizeDirected(d); tag && tag->kind != FamilyKind::d4) continue;
        ++result.labeledSurvivors;
        std::string codeHex = canonicalCode(expand(d)).hex();
        if (!classes.count(codeHex))
            classes.emplace(codeHex,
                            expand(decodeDigraphCode(CanonicalCode::fromHex(codeHex))));
    }
    for (auto& [code, rep] : classes) {
        result.classCodes.push_back(code);
        result.classes.push_back(rep);
    }
    return result;
}

}  // namespace hamlab
