#include <doctest.h>

#include <hamlab/canonical.hpp>
#include <hamlab/conditions.hpp>
#include <hamlab/correspondence.hpp>
#include <hamlab/hamilton.hpp>

#include "test_util.hpp"

using namespace hamlab;

TEST_CASE("expand produces the pair graph") {
    Digraph d(3, {{0, 1}, {1, 0}, {2, 0}});
    auto g = expand(d);
    CHECK(g.halfOrder() == 3);
    for (int i = 0; i < 3; ++i) CHECK(g.edge(i, i));
    // arc i->j becomes the edge (b_i, w_j), stored as edge(j, i).
    CHECK(g.edge(1, 0));
    CHECK(g.edge(0, 1));
    CHECK(g.edge(0, 2));
    CHECK(g.edgeCount() == 3 + 3);
}

TEST_CASE("contract after expand is the identity, exhaustively to order 4") {
    for (int order = 1; order <= 4; ++order) {
        testutil::forAllDigraphs(order, [](const Digraph& d) {
            CHECK(contract(expand(d)) == d);
        });
    }
}

TEST_CASE("contract after expand is the identity on random digraphs to order 10") {
    auto gen = testutil::rng(3001);
    for (int trial = 0; trial < 1000; ++trial) {
        int order = 1 + static_cast<int>(gen() % 10);
        double density = 0.15 + 0.7 * (gen() % 100) / 100.0;
        auto d = testutil::randomDigraph(order, density, gen);
        CHECK(contract(expand(d)) == d);
    }
}

TEST_CASE("expand after contract is the identity on random matched graphs") {
    auto gen = testutil::rng(3002);
    for (int trial = 0; trial < 300; ++trial) {
        auto g = testutil::randomMatched(1 + static_cast<int>(gen() % 8), 0.5, gen);
        CHECK(expand(contract(g)) == g);
    }
}

TEST_CASE("degree bookkeeping across the correspondence") {
    auto gen = testutil::rng(3003);
    for (int trial = 0; trial < 200; ++trial) {
        auto d = testutil::randomDigraph(2 + static_cast<int>(gen() % 8), 0.4, gen);
        auto g = expand(d);
        for (int i = 0; i < d.order(); ++i) {
            CHECK(g.wDegree(i) == d.inDegree(i) + 1);
            CHECK(g.bDegree(i) == d.outDegree(i) + 1);
        }
    }
}

TEST_CASE("hamilton cycles correspond, exhaustively to order 4") {
    for (int order = 2; order <= 4; ++order) {
        testutil::forAllDigraphs(order, [](const Digraph& d) {
            auto directed = findHamiltonCycle(d);
            auto alternating = findAlternatingHamiltonCycle(expand(d));
            CHECK(directed.has_value() == alternating.has_value());
            if (alternating) {
                CHECK(alternating->length() == 2 * d.order());
                CHECK(isValidAlternatingCycle(expand(d), *alternating));
            }
        });
    }
}

TEST_CASE("hamilton cycles correspond on random order-5 digraphs") {
    auto gen = testutil::rng(3004);
    for (int trial = 0; trial < 2000; ++trial) {
        auto d = testutil::randomDigraph(5, 0.2 + 0.6 * (gen() % 100) / 100.0, gen);
        auto g = expand(d);
        auto directed = findHamiltonCycle(d);
        auto alternating = findAlternatingHamiltonCycle(g);
        CHECK(directed.has_value() == alternating.has_value());
        if (alternating) CHECK(isValidAlternatingCycle(g, *alternating));
    }
}

TEST_CASE("slack agrees across the correspondence, exhaustively to order 4") {
    for (int order = 2; order <= 4; ++order) {
        testutil::forAllDigraphs(order, [](const Digraph& d) {
            auto left = digraphSlack(d, ConditionMode::woodallNonArc);
            auto right = bipartiteSlack(expand(d), ConditionMode::lasVergnas);
            CHECK(left.slack == right.slack);
            CHECK(left.vacuous() == right.vacuous());
            // Witnesses correspond index-for-index: non-arc (u,v) maps to the
            // nonadjacent cross pair (w_v, b_u).
            REQUIRE(left.witnesses.size() == right.witnesses.size());
            auto g = expand(d);
            for (std::size_t k = 0; k < left.witnesses.size(); ++k) {
                auto [u, v] = left.witnesses[k];
                bool found = false;
                for (auto [wv, bv] : right.witnesses)
                    if (wv == v && bv == g.bVertex(u)) found = true;
                CHECK(found);
            }
        });
    }
}

TEST_CASE("slack agrees across the correspondence on random order-5 digraphs") {
    auto gen = testutil::rng(3005);
    for (int trial = 0; trial < 3000; ++trial) {
        auto d = testutil::randomDigraph(5, 0.2 + 0.6 * (gen() % 100) / 100.0, gen);
        auto left = digraphSlack(d, ConditionMode::woodallNonArc);
        auto right = bipartiteSlack(expand(d), ConditionMode::lasVergnas);
        CHECK(left.slack == right.slack);
    }
}

TEST_CASE("doubling an undirected graph") {
    auto g = UndirectedGraph::cycle(4);
    auto d = doubleUndirected(g);
    CHECK(d.order() == 4);
    CHECK(d.arcCount() == 8);
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v)
            if (u != v) CHECK(d.arc(u, v) == g.edge(u, v));
}

TEST_CASE("lifted cycles and closed paths validate") {
    auto gen = testutil::rng(3006);
    for (int trial = 0; trial < 200; ++trial) {
        auto d = testutil::randomDigraph(6, 0.5, gen);
        auto g = expand(d);
        if (auto cycle = findHamiltonCycle(d)) {
            auto lifted = liftCycle(g, *cycle);
            CHECK(isValidAlternatingCycle(g, lifted));
            CHECK(lifted.length() == 12);
        }
        auto path = longestDirectedPath(d);
        if (!path.empty()) {
            auto lifted = liftClosedPath(g, path);
            CHECK(isValidClosedAlternatingPath(g, lifted));
            CHECK(lifted.length() == 2 * static_cast<int>(path.size()));
        }
    }
}

TEST_CASE("matched-to-labeled serialization labeling") {
    Digraph d(3, {{0, 1}, {2, 1}});
    auto g = expand(d);
    auto labeled = matchedToLabeled(g);
    CHECK(labeled.order() == 6);
    // Vertex i is w_i, vertex 3+i is b_i; the matching is the diagonal.
    for (int i = 0; i < 3; ++i) CHECK(labeled.edge(i, 3 + i));
    // arc 0->1: edge (b_0, w_1) = labeled edge (3, 1).
    CHECK(labeled.edge(3, 1));
    CHECK(labeled.edge(5, 1));
    CHECK(labeled.edgeCount() == 5);
    CHECK(matchedFromLabeled(labeled) == g);
}

TEST_CASE("matched-from-labeled validates shape") {
    // Odd order.
    CHECK_THROWS_AS(matchedFromLabeled(UndirectedGraph(5)), DomainError);
    // Missing diagonal: pair 1's matching edge (1,3) is absent.
    UndirectedGraph noDiag(4, {{0, 2}, {0, 3}});
    CHECK_THROWS_AS(matchedFromLabeled(noDiag), DomainError);
    // Intra-side edge.
    UndirectedGraph intra(4, {{0, 2}, {1, 3}, {0, 1}});
    CHECK_THROWS_AS(matchedFromLabeled(intra), DomainError);
    // Valid: diagonal plus one cross edge.
    UndirectedGraph good(4, {{0, 2}, {1, 3}, {0, 3}});
    auto g = matchedFromLabeled(good);
    CHECK(g.halfOrder() == 2);
    CHECK(g.edge(0, 1));
    CHECK(matchedToLabeled(g) == good);
}

TEST_CASE("round trips through labeled serialization on random graphs") {
    auto gen = testutil::rng(3007);
    for (int trial = 0; trial < 300; ++trial) {
        auto g = testutil::randomMatched(1 + static_cast<int>(gen() % 10), 0.5, gen);
        CHECK(matchedFromLabeled(matchedToLabeled(g)) == g);
    }
}
