#include <array>

#include "doctest.h"
#include "gridbed/oracle.hpp"
#include "test_support.hpp"

using namespace gridbed;
namespace ts = gridbed::testsupport;

namespace {

Graph path(int n) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
    return Graph::make(n, es);
}

Graph cycle(int n) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
    return Graph::make(n, es);
}

Graph star(int leaves) {
    std::vector<std::pair<int, int>> es;
    for (int i = 1; i <= leaves; ++i) es.emplace_back(0, i);
    return Graph::make(leaves + 1, es);
}

}  // namespace

TEST_CASE("brute_force_embed basics") {
    for (int n = 1; n <= 8; ++n) {
        auto res = brute_force_embed(path(n), 1, n);
        CHECK(res.answer == Answer::yes);
        CHECK(validate(path(n), *res.witness).ok);
    }
    CHECK(brute_force_embed(cycle(4), 2, 2).answer == Answer::yes);
    CHECK(brute_force_embed(cycle(3), 3, 3).answer == Answer::no);
    CHECK(brute_force_embed(cycle(3), 5, 5).answer == Answer::no);
}

TEST_CASE("brute_force_embed yes answers always validate") {
    ts::Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + rng.below(7);
        Graph g = ts::random_tree(rng, n);
        int k = 1 + rng.below(4), r = 1 + rng.below(5);
        auto res = brute_force_embed(g, k, r);
        if (res.answer == Answer::yes) {
            REQUIRE(res.witness.has_value());
            CHECK(validate(g, *res.witness).ok);
        }
    }
}

TEST_CASE("brute_force_embed agrees with the unpruned enumerator on <= 5 vertex graphs") {
    // The full 6-vertex corpus is exercised by the acceptance suite; this
    // keeps the unit run quick while covering the same property.
    for (int n = 1; n <= 5; ++n) {
        auto graphs = ts::connected_graphs(n, 4);
        for (const auto& g : graphs) {
            auto expect = ts::unpruned_embeddable(g, 5, 5);
            REQUIRE(expect.has_value());
            auto got = brute_force_embed(g, 5, 5);
            REQUIRE(got.answer != Answer::unknown);
            CHECK((got.answer == Answer::yes) == *expect);
        }
    }
}

TEST_CASE("embed_components_diagonally") {
    Graph two_p3 = disjoint_union(path(3), path(3));
    auto res = embed_components_diagonally(two_p3);
    CHECK(res.answer == Answer::yes);
    GridEmbedding f = *res.witness;
    f.k = 6;
    f.r = 6;
    CHECK(validate(two_p3, f).ok);

    CHECK(embed_components_diagonally(disjoint_union(cycle(3), path(2))).answer == Answer::no);
}

TEST_CASE("embed_components_diagonally witnesses use disjoint diagonal boxes") {
    ts::Rng rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = Graph::make(0, {});
        int comps = 2 + rng.below(4);
        for (int c = 0; c < comps; ++c) g = disjoint_union(g, ts::random_tree(rng, 1 + rng.below(4)));
        auto res = embed_components_diagonally(g);
        REQUIRE(res.answer == Answer::yes);
        // Matches whole-graph brute force at k = r = n.
        auto direct = brute_force_embed(g, std::max(1, g.n), std::max(1, g.n));
        CHECK(direct.answer == Answer::yes);
        // Pairwise non-overlapping component bounding boxes.
        auto comps_list = connected_components(g);
        std::vector<std::array<int, 4>> boxes;
        for (const auto& comp : comps_list) {
            int minr = 1 << 28, minc = 1 << 28, maxr = -1, maxc = -1;
            for (int v : comp) {
                Cell c = res.witness->at(v);
                minr = std::min(minr, c.row);
                maxr = std::max(maxr, c.row);
                minc = std::min(minc, c.col);
                maxc = std::max(maxc, c.col);
            }
            boxes.push_back({minr, maxr, minc, maxc});
        }
        for (size_t i = 0; i < boxes.size(); ++i)
            for (size_t j = i + 1; j < boxes.size(); ++j) {
                bool row_disjoint = boxes[i][1] < boxes[j][0] || boxes[j][1] < boxes[i][0];
                bool col_disjoint = boxes[i][3] < boxes[j][2] || boxes[j][3] < boxes[i][2];
                CHECK((row_disjoint || col_disjoint));
            }
    }
}

TEST_CASE("embed_caterpillar_forest") {
    // P10 in 1 x 10.
    auto res = embed_caterpillar_forest(path(10), 1, 10);
    REQUIRE(res.has_value());
    CHECK(res->answer == Answer::yes);
    CHECK(validate(path(10), *res->witness).ok);

    // Spine P4 with one leaf per spine vertex: fits 2 x 4, leaves above.
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < 4; ++i) es.emplace_back(i, i + 1);
    for (int i = 0; i < 4; ++i) es.emplace_back(i, 4 + i);
    Graph cat = Graph::make(8, es);
    auto res2 = embed_caterpillar_forest(cat, 2, 4);
    REQUIRE(res2.has_value());
    CHECK(res2->answer == Answer::yes);
    CHECK(validate(cat, *res2->witness).ok);

    // Not a caterpillar: spider with legs of length 2.
    Graph spider = Graph::make(7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}});
    CHECK_FALSE(embed_caterpillar_forest(spider, 7, 7).has_value());

    // K1,5 is a caterpillar but cannot embed anywhere.
    auto res3 = embed_caterpillar_forest(star(5), 6, 6);
    REQUIRE(res3.has_value());
    CHECK(res3->answer == Answer::no);
}

TEST_CASE("embed_caterpillar_forest: packing yes answers are confirmed by the oracle") {
    ts::Rng rng(81);
    int confirmed = 0;
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = ts::random_caterpillar_forest(rng, 1 + rng.below(3), 4, 2);
        if (g.n > 12) continue;
        int k = 3, r = 1 + rng.below(12);
        auto res = embed_caterpillar_forest(g, k, r);
        REQUIRE(res.has_value());
        if (res->answer == Answer::yes) {
            CHECK(validate(g, *res->witness).ok);
            auto oracle = brute_force_embed(g, k, r);
            CHECK(oracle.answer == Answer::yes);
            ++confirmed;
        }
    }
    CHECK(confirmed > 0);
}

TEST_CASE("min_distance_approximation") {
    CHECK(min_distance_approximation(path(8), 8, 8).value == 0);
    CHECK(min_distance_approximation(cycle(3), 3, 3).value == 3);  // |V| fallback

    // All trees on <= 6 vertices: matches the unpruned enumerator.
    for (int n = 2; n <= 6; ++n) {
        for (const auto& g : ts::connected_graphs(n, 4)) {
            if (g.edge_count() != n - 1) continue;  // trees only
            auto got = min_distance_approximation(g, 3, 3);
            REQUIRE(got.status == Answer::yes);
            auto dist = all_pairs_distances(g);
            int best = 1 << 28;
            ts::unpruned_enumerate(g, 3, 3, 200'000'000, [&](const GridEmbedding& f) {
                int worst = 0;
                for (int u = 0; u < g.n; ++u)
                    for (int v = u + 1; v < g.n; ++v)
                        worst = std::max(worst, dist[u][v] - grid_distance(f, u, v));
                best = std::min(best, worst);
                return true;
            });
            if (best == 1 << 28) best = g.n;
            CHECK(got.value == best);
        }
    }
}

TEST_CASE("min_distance_approximation equals |V| exactly when brute force says no") {
    ts::Rng rng(90);
    for (int trial = 0; trial < 25; ++trial) {
        Graph g = ts::random_tree(rng, 2 + rng.below(6));
        int k = 1 + rng.below(3), r = 1 + rng.below(4);
        auto mda = min_distance_approximation(g, k, r);
        REQUIRE(mda.status == Answer::yes);
        auto bf = brute_force_embed(g, k, r);
        REQUIRE(bf.answer != Answer::unknown);
        CHECK((mda.value == g.n) == (bf.answer == Answer::no));
    }
}
