// Exhaustive enumeration, the four verification campaigns, shard algebra,
// report serialization, and the constrained derivation of the sporadic
// seven-pair class.  Campaign counters are cross-checked against naive
// oracles at small orders and against frozen full-campaign inventories.

#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <hamlab/bipartite.hpp>
#include <hamlab/canonical.hpp>
#include <hamlab/conditions.hpp>
#include <hamlab/correspondence.hpp>
#include <hamlab/errors.hpp>
#include <hamlab/families.hpp>
#include <hamlab/graph.hpp>
#include <hamlab/hamilton.hpp>
#include <hamlab/verifier.hpp>

#include "test_util.hpp"

using namespace hamlab;
using namespace testutil;

namespace {

std::uint64_t arcKey(const Digraph& d) {
    std::uint64_t key = 0;
    int slot = 0;
    for (int u = 0; u < d.order(); ++u) {
        for (int v = 0; v < d.order(); ++v) {
            if (u == v) continue;
            if (d.arc(u, v)) key |= std::uint64_t{1} << slot;
            ++slot;
        }
    }
    return key;
}

std::uint64_t edgeKey(const UndirectedGraph& g) {
    std::uint64_t key = 0;
    int slot = 0;
    for (int u = 0; u < g.order(); ++u) {
        for (int v = u + 1; v < g.order(); ++v) {
            if (g.edge(u, v)) key |= std::uint64_t{1} << slot;
            ++slot;
        }
    }
    return key;
}

bool naiveSatisfies(const std::optional<int>& slack, int minSlack) {
    return !slack.has_value() || *slack >= minSlack;
}

// Independent recount of one digraph campaign at naive-oracle scale.
struct NaiveCampaign {
    std::int64_t satisfying = 0;
    std::int64_t hamiltonian = 0;
    std::int64_t strict = 0;
    std::int64_t strictViolations = 0;
};

NaiveCampaign recountDigraphCampaign(int order, VerifyVariant variant) {
    NaiveCampaign tally;
    forAllDigraphs(order, [&](const Digraph& d) {
        std::optional<int> slack;
        bool ham;
        if (variant == VerifyVariant::theorem12) {
            slack = naiveLasVergnasSlack(expand(d));
            ham = naiveHamiltonianDirected(d);  // correspondence, tested elsewhere
        } else {
            ConditionMode mode = variant == VerifyVariant::theorem14
                                     ? ConditionMode::allPairs
                                     : ConditionMode::woodallNonArc;
            slack = naiveDigraphSlack(d, mode);
            ham = naiveHamiltonianDirected(d);
        }
        if (!naiveSatisfies(slack, -1)) return;
        ++tally.satisfying;
        if (ham) ++tally.hamiltonian;
        if (naiveSatisfies(slack, 0)) {
            ++tally.strict;
            if (!ham) ++tally.strictViolations;
        }
    });
    return tally;
}

}  // namespace

TEST_CASE("enumeration yields every labeled graph exactly once") {
    std::set<std::uint64_t> keys;
    std::int64_t visits = 0;
    enumerateDigraphs(3, {}, std::nullopt, [&](const Digraph& d) {
        CHECK(d.order() == 3);
        keys.insert(arcKey(d));
        ++visits;
    });
    CHECK(visits == 64);
    CHECK(keys.size() == 64);

    visits = 0;
    enumerateDigraphs(1, {}, std::nullopt, [&](const Digraph& d) {
        CHECK(d.order() == 1);
        ++visits;
    });
    CHECK(visits == 1);

    std::set<std::uint64_t> edgeKeys;
    enumerateUndirected(4, {}, std::nullopt,
                        [&](const UndirectedGraph& g) { edgeKeys.insert(edgeKey(g)); });
    CHECK(edgeKeys.size() == 64);

    CHECK_THROWS_AS(enumerateDigraphs(0, {}, std::nullopt, [](const Digraph&) {}), DomainError);
    CHECK_THROWS_AS(enumerateDigraphs(kEnumerationMaxDigraphOrder + 1, {}, std::nullopt,
                                      [](const Digraph&) {}),
                    CapabilityError);
    CHECK_THROWS_AS(enumerateUndirected(kEnumerationMaxUndirectedOrder + 1, {}, std::nullopt,
                                        [](const UndirectedGraph&) {}),
                    CapabilityError);
}

TEST_CASE("shards partition the enumeration stream") {
    std::vector<std::uint64_t> full;
    enumerateDigraphs(4, {}, std::nullopt, [&](const Digraph& d) { full.push_back(arcKey(d)); });
    REQUIRE(full.size() == 4096);
    const std::set<std::uint64_t> fullSet(full.begin(), full.end());

    for (int count : {2, 4, 8}) {
        std::set<std::uint64_t> unionSet;
        std::size_t totalSeen = 0;
        for (int index = 0; index < count; ++index) {
            std::vector<std::uint64_t> part;
            enumerateDigraphs(4, {index, count}, std::nullopt,
                              [&](const Digraph& d) { part.push_back(arcKey(d)); });
            CHECK(part.size() == full.size() / count);
            totalSeen += part.size();
            for (auto key : part) {
                // Disjointness: no key may appear in two shards.
                CHECK(unionSet.insert(key).second);
            }
        }
        CHECK(totalSeen == full.size());
        CHECK(unionSet == fullSet);
    }

    std::set<std::uint64_t> undirectedUnion;
    for (int index = 0; index < 4; ++index) {
        enumerateUndirected(5, {index, 4}, std::nullopt, [&](const UndirectedGraph& g) {
            CHECK(undirectedUnion.insert(edgeKey(g)).second);
        });
    }
    CHECK(undirectedUnion.size() == 1024);

    CHECK_THROWS_AS(enumerateDigraphs(4, {0, 3}, std::nullopt, [](const Digraph&) {}),
                    DomainError);
    CHECK_THROWS_AS(enumerateDigraphs(4, {4, 4}, std::nullopt, [](const Digraph&) {}),
                    DomainError);
    CHECK_THROWS_AS(enumerateDigraphs(4, {-1, 4}, std::nullopt, [](const Digraph&) {}),
                    DomainError);
    // More shards than keyspace slots cannot be pinned.
    CHECK_THROWS_AS(enumerateDigraphs(2, {0, 8}, std::nullopt, [](const Digraph&) {}),
                    DomainError);
}

TEST_CASE("the pruned slack filter equals a post-hoc filter") {
    for (int minSlack : {-1, 0}) {
        for (ConditionMode mode : {ConditionMode::woodallNonArc, ConditionMode::allPairs}) {
            std::vector<std::uint64_t> filtered;
            enumerateDigraphs(4, {}, SlackFilter{mode, minSlack},
                              [&](const Digraph& d) { filtered.push_back(arcKey(d)); });
            std::vector<std::uint64_t> expected;
            enumerateDigraphs(4, {}, std::nullopt, [&](const Digraph& d) {
                if (naiveSatisfies(naiveDigraphSlack(d, mode), minSlack))
                    expected.push_back(arcKey(d));
            });
            CHECK(filtered == expected);
        }
    }

    std::vector<std::uint64_t> filtered;
    enumerateUndirected(5, {}, SlackFilter{ConditionMode::ore, -1},
                        [&](const UndirectedGraph& g) { filtered.push_back(edgeKey(g)); });
    std::vector<std::uint64_t> expected;
    enumerateUndirected(5, {}, std::nullopt, [&](const UndirectedGraph& g) {
        if (naiveSatisfies(naiveOreSlack(g), -1)) expected.push_back(edgeKey(g));
    });
    CHECK(filtered == expected);

    CHECK_THROWS_AS(enumerateDigraphs(4, {}, SlackFilter{ConditionMode::ore, -1},
                                      [](const Digraph&) {}),
                    DomainError);
    CHECK_THROWS_AS(enumerateUndirected(4, {}, SlackFilter{ConditionMode::dirac, -1},
                                        [](const UndirectedGraph&) {}),
                    DomainError);
}

TEST_CASE("campaign counters match naive oracles at small orders") {
    for (int order = 2; order <= 4; ++order) {
        for (VerifyVariant variant :
             {VerifyVariant::theorem11, VerifyVariant::theorem12, VerifyVariant::theorem14}) {
            CAPTURE(order);
            CAPTURE(verifyVariantName(variant));
            VerifyReport report = verifyMainTheorem(order, variant);
            NaiveCampaign naive = recountDigraphCampaign(order, variant);
            CHECK(report.totalLabeled == std::int64_t{1} << (order * (order - 1)));
            CHECK(report.conditionSatisfying == naive.satisfying);
            CHECK(report.hamiltonianCount == naive.hamiltonian);
            CHECK(report.strictSatisfying == naive.strict);
            CHECK(report.strictViolations == naive.strictViolations);
            CHECK(report.conservationHolds());
            CHECK(report.certified());
            CHECK(report.elapsedMicros == 0);
        }
    }

    for (int order = 3; order <= 4; ++order) {
        CAPTURE(order);
        VerifyReport report = verifyMainTheorem(order, VerifyVariant::corollary);
        NaiveCampaign naive;
        forAllUndirected(order, [&](const UndirectedGraph& g) {
            auto slack = naiveOreSlack(g);
            if (!naiveSatisfies(slack, -1)) return;
            ++naive.satisfying;
            bool ham = naiveHamiltonianUndirected(g);
            if (ham) ++naive.hamiltonian;
            if (naiveSatisfies(slack, 0)) {
                ++naive.strict;
                if (!ham) ++naive.strictViolations;
            }
        });
        CHECK(report.conditionSatisfying == naive.satisfying);
        CHECK(report.hamiltonianCount == naive.hamiltonian);
        CHECK(report.strictSatisfying == naive.strict);
        CHECK(report.strictViolations == naive.strictViolations);
        CHECK(report.conservationHolds());
        CHECK(report.certified());
    }
}

TEST_CASE("small campaigns reproduce their frozen inventories") {
    VerifyReport t11o3 = verifyMainTheorem(3, VerifyVariant::theorem11);
    CHECK(t11o3.totalLabeled == 64);
    CHECK(t11o3.conditionSatisfying == 18);
    CHECK(t11o3.hamiltonianCount == 15);
    CHECK(t11o3.strictViolations == 0);
    REQUIRE(t11o3.exceptions.size() == 1);
    CHECK(t11o3.exceptions.front() == ExceptionClass{"033c", "D1(1,1)", 3});

    VerifyReport t11o4 = verifyMainTheorem(4, VerifyVariant::theorem11);
    CHECK(t11o4.totalLabeled == 4096);
    CHECK(t11o4.conditionSatisfying == 456);
    CHECK(t11o4.hamiltonianCount == 444);
    REQUIRE(t11o4.exceptions.size() == 1);
    CHECK(t11o4.exceptions.front() == ExceptionClass{"0417f0", "D1(1,2)", 12});

    VerifyReport t14o3 = verifyMainTheorem(3, VerifyVariant::theorem14);
    REQUIRE(t14o3.exceptions.size() == 1);
    CHECK(t14o3.exceptions.front() == ExceptionClass{"033c", "D1'(1)", 3});

    VerifyReport t14o4 = verifyMainTheorem(4, VerifyVariant::theorem14);
    CHECK(t14o4.conditionSatisfying == 372);
    CHECK(t14o4.hamiltonianCount == 372);
    CHECK(t14o4.exceptions.empty());
    CHECK(t14o4.certified());

    // The matched campaign coincides with the non-arc campaign numerically;
    // its classes carry pair-expansion family names.
    VerifyReport t12o3 = verifyMainTheorem(3, VerifyVariant::theorem12);
    CHECK(t12o3.conditionSatisfying == t11o3.conditionSatisfying);
    CHECK(t12o3.hamiltonianCount == t11o3.hamiltonianCount);
    CHECK(t12o3.strictSatisfying == t11o3.strictSatisfying);
    REQUIRE(t12o3.exceptions.size() == 1);
    CHECK(t12o3.exceptions.front() == ExceptionClass{"033c", "G1(1,1)", 3});

    VerifyReport t12o4 = verifyMainTheorem(4, VerifyVariant::theorem12);
    CHECK(t12o4.conditionSatisfying == t11o4.conditionSatisfying);
    CHECK(t12o4.hamiltonianCount == t11o4.hamiltonianCount);
    REQUIRE(t12o4.exceptions.size() == 1);
    CHECK(t12o4.exceptions.front() == ExceptionClass{"0417f0", "G1(1,2)", 12});

    VerifyReport coro3 = verifyMainTheorem(3, VerifyVariant::corollary);
    CHECK(coro3.totalLabeled == 8);
    CHECK(coro3.conditionSatisfying == 4);
    CHECK(coro3.hamiltonianCount == 1);
    REQUIRE(coro3.exceptions.size() == 1);
    const std::string pathCode = canonicalCode(UndirectedGraph(3, {{{0, 1}, {1, 2}}})).hex();
    CHECK(coro3.exceptions.front() == ExceptionClass{pathCode, "G5(1,1)", 3});

    VerifyReport coro4 = verifyMainTheorem(4, VerifyVariant::corollary);
    CHECK(coro4.totalLabeled == 64);
    CHECK(coro4.conditionSatisfying == 22);
    CHECK(coro4.hamiltonianCount == 10);
    REQUIRE(coro4.exceptions.size() == 1);
    CHECK(coro4.exceptions.front() == ExceptionClass{"043c", "G5(1,2)", 12});
}

TEST_CASE("the order-five digraph campaigns certify with the full class inventory") {
    VerifyReport t11 = verifyMainTheorem(5, VerifyVariant::theorem11);
    CHECK(t11.totalLabeled == 1048576);
    CHECK(t11.conditionSatisfying == 70821);
    CHECK(t11.hamiltonianCount == 70506);
    CHECK(t11.strictViolations == 0);
    CHECK(t11.conservationHolds());
    CHECK(t11.certified());
    const std::vector<ExceptionClass> expected11 = {
        {"0503fee0", "D2(2,inner=0200)", 10},  {"0503fef0", "D2(2,inner=0240)", 20},
        {"0503fff0", "D2(2,inner=02c0)", 10},  {"0515bff0", "D1(1,3)", 20},
        {"05164ff0", "D1(2,2)", 15},           {"0516eca0", "D3(1,fwd=0,bwd=0)", 60},
        {"05c1db70", "D3(1,fwd=1,bwd=1)", 60}, {"05c2b6b0", "D3(1,fwd=1,bwd=0)", 120},
    };
    CHECK(t11.exceptions == expected11);

    VerifyReport t14 = verifyMainTheorem(5, VerifyVariant::theorem14);
    CHECK(t14.conditionSatisfying == 68361);
    CHECK(t14.hamiltonianCount == 68066);
    CHECK(t14.strictViolations == 0);
    CHECK(t14.conservationHolds());
    CHECK(t14.certified());
    const std::vector<ExceptionClass> expected14 = {
        {"0503fee0", "D2(2,inner=0200)", 10},   {"0503fef0", "D2(2,inner=0240)", 20},
        {"0503fff0", "D2(2,inner=02c0)", 10},   {"05164ff0", "D1'(2)", 15},
        {"0516eca0", "D3'(fwd=0,bwd=0)", 60},   {"05c1db70", "D3'(fwd=1,bwd=1)", 60},
        {"05c2b6b0", "D3'(fwd=1,bwd=0)", 120},
    };
    CHECK(t14.exceptions == expected14);
}

TEST_CASE("the undirected campaigns certify through order seven") {
    VerifyReport o5 = verifyMainTheorem(5, VerifyVariant::corollary);
    CHECK(o5.totalLabeled == 1024);
    CHECK(o5.conditionSatisfying == 273);
    CHECK(o5.hamiltonianCount == 218);
    CHECK(o5.strictViolations == 0);
    REQUIRE(o5.exceptions.size() == 4);
    CHECK(o5.exceptionLabeledTotal() == 55);
    CHECK(o5.certified());
    std::set<std::string> families;
    for (const auto& e : o5.exceptions) {
        REQUIRE(e.family.has_value());
        families.insert(*e.family);
    }
    const std::string empty2 = canonicalCode(UndirectedGraph(2)).hex();
    const std::string edge2 = canonicalCode(UndirectedGraph(2, {{{0, 1}}})).hex();
    CHECK(families == std::set<std::string>{"G5(1,3)", "G5(2,2)", "G6(2,inner=" + empty2 + ")",
                                            "G6(2,inner=" + edge2 + ")"});

    VerifyReport o6 = verifyMainTheorem(6, VerifyVariant::corollary);
    CHECK(o6.totalLabeled == 32768);
    CHECK(o6.conditionSatisfying == 5668);
    CHECK(o6.hamiltonianCount == 5578);
    CHECK(o6.exceptions.size() == 2);
    CHECK(o6.exceptionLabeledTotal() == 90);
    CHECK(o6.strictViolations == 0);
    CHECK(o6.certified());

    VerifyReport o7 = verifyMainTheorem(7, VerifyVariant::corollary);
    CHECK(o7.totalLabeled == 2097152);
    CHECK(o7.conditionSatisfying == 264793);
    CHECK(o7.hamiltonianCount == 264296);
    CHECK(o7.exceptions.size() == 7);
    CHECK(o7.exceptionLabeledTotal() == 497);
    CHECK(o7.strictViolations == 0);
    CHECK(o7.certified());
}

TEST_CASE("campaign runs are deterministic and respect input bounds") {
    VerifyReport a = verifyMainTheorem(4, VerifyVariant::theorem11);
    VerifyReport b = verifyMainTheorem(4, VerifyVariant::theorem11);
    CHECK(a == b);
    CHECK(a.toJsonLine() == b.toJsonLine());

    VerifyOptions timed;
    timed.recordElapsed = true;
    VerifyReport c = verifyMainTheorem(4, VerifyVariant::theorem11, timed);
    CHECK(c.elapsedMicros > 0);
    c.elapsedMicros = 0;
    CHECK(c == a);

    CHECK_THROWS_AS(verifyMainTheorem(1, VerifyVariant::theorem11), DomainError);
    CHECK_THROWS_AS(verifyMainTheorem(2, VerifyVariant::corollary), DomainError);
    CHECK_THROWS_AS(verifyMainTheorem(kEnumerationMaxDigraphOrder + 1, VerifyVariant::theorem11),
                    CapabilityError);
    CHECK_THROWS_AS(
        verifyMainTheorem(kEnumerationMaxUndirectedOrder + 1, VerifyVariant::corollary),
        CapabilityError);

    // Cancellation polls are amortized, so a pre-cancelled token needs a
    // campaign large enough to cross the poll interval.
    CancelToken cancelled;
    cancelled.cancel();
    VerifyOptions opts;
    opts.token = &cancelled;
    CHECK_THROWS_AS(verifyMainTheorem(5, VerifyVariant::theorem11, opts), CancelledError);
    CHECK_THROWS_AS(enumerateDigraphs(4, {}, std::nullopt, [](const Digraph&) {}, &cancelled),
                    CancelledError);
}

TEST_CASE("sharded campaigns merge to the unsharded report") {
    VerifyReport whole = verifyMainTheorem(4, VerifyVariant::theorem11);
    std::vector<VerifyReport> shards = verifyAllShards(4, VerifyVariant::theorem11, 4, 2);
    REQUIRE(shards.size() == 4);
    std::int64_t totalSum = 0;
    for (int i = 0; i < 4; ++i) {
        CHECK(shards[i].shardId == i);
        CHECK(shards[i].shardCount == 4);
        CHECK(shards[i].totalLabeled == whole.totalLabeled / 4);
        totalSum += shards[i].totalLabeled;
    }
    CHECK(totalSum == whole.totalLabeled);

    VerifyReport merged = mergeReports(shards);
    CHECK(merged.shardId == -1);
    CHECK(merged.variant == whole.variant);
    CHECK(merged.order == whole.order);
    CHECK(merged.totalLabeled == whole.totalLabeled);
    CHECK(merged.conditionSatisfying == whole.conditionSatisfying);
    CHECK(merged.hamiltonianCount == whole.hamiltonianCount);
    CHECK(merged.strictSatisfying == whole.strictSatisfying);
    CHECK(merged.strictViolations == whole.strictViolations);
    CHECK(merged.exceptions == whole.exceptions);
    CHECK(merged.conservationHolds());

    // Thread count must not change the result.
    std::vector<VerifyReport> singleThreaded = verifyAllShards(4, VerifyVariant::theorem11, 4, 1);
    REQUIRE(singleThreaded.size() == shards.size());
    for (std::size_t i = 0; i < shards.size(); ++i) CHECK(singleThreaded[i] == shards[i]);

    CHECK_THROWS_AS(verifyAllShards(4, VerifyVariant::theorem11, 4, 0), DomainError);
    CHECK_THROWS_AS(verifyAllShards(4, VerifyVariant::theorem11, 0, 1), DomainError);
}

TEST_CASE("report merging validates its inputs") {
    CHECK_THROWS_AS(mergeReports({}), DomainError);

    VerifyReport r1 = verifyMainTheorem(3, VerifyVariant::theorem11, {{0, 2}});
    VerifyReport r2 = verifyMainTheorem(3, VerifyVariant::theorem11, {{1, 2}});
    VerifyReport merged = mergeReports(std::vector<VerifyReport>{r1, r2});
    VerifyReport whole = verifyMainTheorem(3, VerifyVariant::theorem11);
    CHECK(merged.conditionSatisfying == whole.conditionSatisfying);
    CHECK(merged.exceptions == whole.exceptions);

    VerifyReport otherOrder = verifyMainTheorem(4, VerifyVariant::theorem11, {{1, 2}});
    CHECK_THROWS_AS(mergeReports(std::vector<VerifyReport>{r1, otherOrder}), DomainError);
    CHECK_THROWS_AS(mergeReports(std::vector<VerifyReport>{r1, r1}), DomainError);

    VerifyReport fakeA = r1;
    VerifyReport fakeB = r2;
    fakeA.exceptions = {{"00", std::string("X"), 1}};
    fakeB.exceptions = {{"00", std::string("Y"), 1}};
    CHECK_THROWS_AS(mergeReports(std::vector<VerifyReport>{fakeA, fakeB}), DomainError);
}

TEST_CASE("reports serialize to json lines and back") {
    VerifyReport report = verifyMainTheorem(3, VerifyVariant::theorem11);
    const std::string line = report.toJsonLine();
    CHECK(line.find("\"variant\":\"theorem11\"") != std::string::npos);
    CHECK(VerifyReport::fromJsonLine(line) == report);

    // A class outside the catalogue (family null) must survive the round trip.
    VerifyReport synthetic = report;
    synthetic.exceptions.push_back({"ffff", std::nullopt, 7});
    CHECK(VerifyReport::fromJsonLine(synthetic.toJsonLine()) == synthetic);
    CHECK_FALSE(synthetic.certified());
    CHECK(synthetic.unrecognized() == std::vector<std::string>{"ffff"});

    CHECK_THROWS_AS(VerifyReport::fromJsonLine("not json"), ParseError);
    CHECK_THROWS_AS(VerifyReport::fromJsonLine("{}"), ParseError);

    CHECK(verifyVariantFromName("theorem11") == VerifyVariant::theorem11);
    CHECK(verifyVariantFromName("12") == VerifyVariant::theorem12);
    CHECK(verifyVariantFromName("cor") == VerifyVariant::corollary);
    CHECK_FALSE(verifyVariantFromName("theorem13").has_value());
    CHECK(std::string(verifyVariantName(VerifyVariant::theorem14)) == "theorem14");
}

TEST_CASE("the constrained search derives exactly one sporadic class") {
    DeriveG4Result result = deriveG4();
    CHECK(result.assignmentsTried == 65536);
    CHECK(result.labeledSurvivors == 1);
    REQUIRE(result.classes.size() == 1);
    REQUIRE(result.classCodes.size() == 1);
    CHECK(result.classCodes.front() == d4CanonicalHex());

    const MatchedBipartite& g = result.classes.front();
    CHECK(g.nu() == 14);
    CHECK(canonicalCode(g).hex() == d4CanonicalHex());
    auto report = bipartiteSlack(g, ConditionMode::lasVergnas);
    REQUIRE(report.slack.has_value());
    CHECK(*report.slack == -1);
    CHECK_FALSE(findAlternatingHamiltonCycle(g).has_value());
    auto tag = recognizeDirected(contract(g));
    REQUIRE(tag.has_value());
    CHECK(*tag == FamilyTag::d4());
}
