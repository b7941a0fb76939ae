#include <doctest.h>

#include <hamlab/conditions.hpp>
#include <hamlab/correspondence.hpp>
#include <hamlab/families.hpp>

#include "test_util.hpp"

using namespace hamlab;

TEST_CASE("non-arc pair condition on small digraphs") {
    // Directed triangle: every vertex has out/in degree 1; each of the three
    // missing arcs gives 1 + 1 - 3 = -1.
    auto report = digraphSlack(Digraph::directedCycle(3), ConditionMode::woodallNonArc);
    CHECK(report.threshold == 3);
    CHECK(report.slack == -1);
    CHECK(report.witnesses ==
          std::vector<std::pair<int, int>>{{0, 2}, {1, 0}, {2, 1}});

    // Complete digraph: no non-arc pair to evaluate.
    CHECK(digraphSlack(Digraph::complete(4), ConditionMode::woodallNonArc).vacuous());

    // Two isolated vertices.
    auto empty = digraphSlack(Digraph(2), ConditionMode::woodallNonArc);
    CHECK(empty.slack == -2);
    CHECK(empty.witnesses.size() == 2);
}

TEST_CASE("the all-pairs condition includes the diagonal") {
    // Two complete blocks of sizes 2 and 4 sharing a vertex: the non-arc
    // variant bottoms out at -1 on cross pairs, but the small block's
    // private vertex has total degree 2, so its diagonal pair drops the
    // all-pairs minimum to 2 - 5 = -3.
    auto d = buildDirected(FamilyTag::d1(1, 3));
    REQUIRE(d.order() == 5);
    CHECK(digraphSlack(d, ConditionMode::woodallNonArc).slack == -1);
    auto all = digraphSlack(d, ConditionMode::allPairs);
    CHECK(all.slack == -3);
    REQUIRE(all.witnesses.size() == 1);
    CHECK(all.witnesses[0].first == all.witnesses[0].second);

    // The all-pairs mode is never vacuous: the diagonal always exists.
    CHECK_FALSE(digraphSlack(Digraph::complete(4), ConditionMode::allPairs).vacuous());
    CHECK(digraphSlack(Digraph::complete(4), ConditionMode::allPairs).slack == 2);
}

TEST_CASE("all-pairs slack is never above the non-arc slack") {
    auto gen = testutil::rng(6001);
    for (int trial = 0; trial < 500; ++trial) {
        auto d = testutil::randomDigraph(2 + static_cast<int>(gen() % 7), 0.5, gen);
        auto nonArc = digraphSlack(d, ConditionMode::woodallNonArc);
        auto all = digraphSlack(d, ConditionMode::allPairs);
        REQUIRE_FALSE(all.vacuous());
        if (!nonArc.vacuous()) CHECK(*all.slack <= *nonArc.slack);
    }
}

TEST_CASE("single-vertex digraph modes") {
    auto d = Digraph::transitiveTournament(4);  // degrees: d+ 3,2,1,0; d- 0,1,2,3
    auto gh = digraphSlack(d, ConditionMode::ghouilaHouri);
    CHECK(gh.threshold == 4);
    CHECK(gh.slack == -1);  // every vertex has d+ + d- = 3
    CHECK(gh.witnesses.size() == 4);
    for (auto [u, v] : gh.witnesses) CHECK(u == v);

    auto semi = digraphSlack(d, ConditionMode::semiDegree);
    CHECK(semi.threshold == 2);
    CHECK(semi.slack == -2);  // vertices 0 and 3 have min degree 0
    CHECK(semi.witnesses == std::vector<std::pair<int, int>>{{0, 0}, {3, 3}});

    auto cycle = digraphSlack(Digraph::directedCycle(5), ConditionMode::semiDegree);
    CHECK(cycle.threshold == 3);  // ceil(5/2)
    CHECK(cycle.slack == -2);
}

TEST_CASE("ore and dirac on classical examples") {
    auto c5 = UndirectedGraph::cycle(5);
    auto ore = undirectedSlack(c5, ConditionMode::ore);
    CHECK(ore.threshold == 5);
    CHECK(ore.slack == -1);
    CHECK(ore.witnesses.size() == 5);  // all five chords
    for (auto [u, v] : ore.witnesses) CHECK(u < v);

    auto dirac = undirectedSlack(c5, ConditionMode::dirac);
    CHECK(dirac.threshold == 3);  // ceil(5/2)
    CHECK(dirac.slack == -1);

    CHECK(undirectedSlack(UndirectedGraph::complete(4), ConditionMode::ore).vacuous());
    CHECK(undirectedSlack(UndirectedGraph::complete(4), ConditionMode::dirac).slack == 1);

    auto k23 = UndirectedGraph::completeBipartite(2, 3);
    // Nonadjacent pairs within the 2-side: 3+3-5 = 1; within the 3-side:
    // 2+2-5 = -1.
    CHECK(undirectedSlack(k23, ConditionMode::ore).slack == -1);
}

TEST_CASE("matched-graph condition equals its contraction condition") {
    auto gen = testutil::rng(6002);
    for (int trial = 0; trial < 400; ++trial) {
        auto g = testutil::randomMatched(2 + static_cast<int>(gen() % 6), 0.5, gen);
        auto direct = bipartiteSlack(g, ConditionMode::lasVergnas);
        auto viaContraction = digraphSlack(contract(g), ConditionMode::woodallNonArc);
        CHECK(direct.slack == viaContraction.slack);
        CHECK(direct.threshold == g.halfOrder() + 2);
        CHECK(direct.slack == testutil::naiveLasVergnasSlack(g));
    }
}

TEST_CASE("doubling identity: ore equals the doubled non-arc condition") {
    for (int order = 2; order <= 5; ++order) {
        testutil::forAllUndirected(order, [](const UndirectedGraph& g) {
            auto ore = undirectedSlack(g, ConditionMode::ore);
            auto doubled = digraphSlack(doubleUndirected(g), ConditionMode::woodallNonArc);
            CHECK(ore.slack == doubled.slack);
            CHECK(ore.vacuous() == doubled.vacuous());
        });
    }
}

TEST_CASE("library slack matches the naive recount on random digraphs") {
    auto gen = testutil::rng(6003);
    for (int trial = 0; trial < 600; ++trial) {
        auto d = testutil::randomDigraph(2 + static_cast<int>(gen() % 8), 0.45, gen);
        for (auto mode : {ConditionMode::woodallNonArc, ConditionMode::allPairs,
                          ConditionMode::ghouilaHouri, ConditionMode::semiDegree}) {
            auto report = digraphSlack(d, mode);
            auto naive = testutil::naiveDigraphSlack(d, mode);
            CHECK(report.slack == naive);
        }
        auto g = testutil::randomUndirected(2 + static_cast<int>(gen() % 8), 0.5, gen);
        CHECK(undirectedSlack(g, ConditionMode::ore).slack == testutil::naiveOreSlack(g));
    }
}

TEST_CASE("witnesses re-verify by direct degree queries") {
    auto gen = testutil::rng(6004);
    for (int trial = 0; trial < 200; ++trial) {
        auto d = testutil::randomDigraph(3 + static_cast<int>(gen() % 6), 0.4, gen);
        auto report = digraphSlack(d, ConditionMode::woodallNonArc);
        if (report.vacuous()) continue;
        int n = d.order();
        for (auto [u, v] : report.witnesses) {
            CHECK(u != v);
            CHECK_FALSE(d.arc(u, v));
            CHECK(d.outDegree(u) + d.inDegree(v) - n == *report.slack);
        }
        // Nothing below the reported minimum exists.
        CHECK(testutil::naiveDigraphSlack(d, ConditionMode::woodallNonArc) == *report.slack);
    }
}

TEST_CASE("adding arcs never decreases slack") {
    auto gen = testutil::rng(6005);
    for (int trial = 0; trial < 300; ++trial) {
        auto d = testutil::randomDigraph(3 + static_cast<int>(gen() % 6), 0.35, gen);
        int u = static_cast<int>(gen() % d.order());
        int v = static_cast<int>(gen() % d.order());
        if (u == v || d.arc(u, v)) continue;
        auto more = d.withArc(u, v);
        for (auto mode : {ConditionMode::woodallNonArc, ConditionMode::allPairs,
                          ConditionMode::ghouilaHouri, ConditionMode::semiDegree}) {
            auto before = digraphSlack(d, mode);
            auto after = digraphSlack(more, mode);
            if (before.vacuous()) continue;
            if (after.vacuous()) continue;  // pair set shrank to empty
            CHECK(*after.slack >= *before.slack);
        }
    }
}

TEST_CASE("mode restrictions and order bounds") {
    CHECK_THROWS_AS(digraphSlack(Digraph(1), ConditionMode::woodallNonArc), DomainError);
    CHECK_THROWS_AS(digraphSlack(Digraph(2), ConditionMode::ore), DomainError);
    auto gen = testutil::rng(6006);
    auto g = testutil::randomMatched(3, 0.5, gen);
    CHECK_THROWS_AS(bipartiteSlack(g, ConditionMode::ore), DomainError);
    CHECK_THROWS_AS(undirectedSlack(UndirectedGraph(3), ConditionMode::lasVergnas), DomainError);
}

TEST_CASE("mode names are stable") {
    CHECK(conditionModeName(ConditionMode::woodallNonArc) == "woodall");
    CHECK(conditionModeName(ConditionMode::allPairs) == "all-pairs");
    CHECK(conditionModeName(ConditionMode::lasVergnas) == "las-vergnas");
    CHECK(conditionModeName(ConditionMode::ore) == "ore");
}
