#include "doctest.h"
#include "gridbed/distance_solver.hpp"
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

TEST_CASE("bucketize") {
    // P6 from an endpoint, k = 1, a = 0: singleton buckets.
    auto part = bucketize(path(6), 0, 1, 0, 6);
    REQUIRE(part.has_value());
    CHECK(part->buckets.size() == 6);
    for (const auto& b : part->buckets) CHECK(b.size() == 1);

    // Star center, k = 2, a = 0: everything in D_0 (5 <= 2k(k+a) = 8).
    auto sp = bucketize(star(4), 0, 2, 0, 5);
    REQUIRE(sp.has_value());
    CHECK(sp->buckets.size() == 1);
    CHECK(sp->buckets[0].size() == 5);

    // Distance bound rejection.
    BucketReject reject;
    CHECK_FALSE(bucketize(path(10), 0, 1, 0, 3, &reject).has_value());
    CHECK(reject.reason.find("distance bound") != std::string::npos);

    // Membership recheck on random trees.
    ts::Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = ts::random_tree(rng, 3 + rng.below(10));
        int k = 1 + rng.below(3), a = rng.below(3);
        auto bp = bucketize(g, 0, k, a, g.n + a + 1);
        if (!bp.has_value()) continue;
        auto dist = distances_from(g, 0);
        for (size_t i = 0; i < bp->buckets.size(); ++i)
            for (int u : bp->buckets[i]) CHECK(dist[u] / (k + a) == static_cast<int>(i));
    }
}

TEST_CASE("solve_with_a spec examples") {
    CHECK(solve_with_a(path(8), 1, 8, 0));
    // C4 in 2x2 needs no slack.
    CHECK(solve_with_a(cycle(4), 2, 2, 0));
    // C6 in 2x3: the oracle's minimum a.
    auto min_a = min_distance_approximation(cycle(6), 2, 3);
    REQUIRE(min_a.status == Answer::yes);
    REQUIRE(min_a.value < 6);
    if (min_a.value > 0) CHECK_FALSE(solve_with_a(cycle(6), 2, 3, min_a.value - 1));
    CHECK(solve_with_a(cycle(6), 2, 3, min_a.value));
}

TEST_CASE("solve_with_a is monotone in a") {
    ts::Rng rng(43);
    for (int trial = 0; trial < 15; ++trial) {
        Graph g = ts::random_tree(rng, 2 + rng.below(6));
        int k = 1 + rng.below(3), r = 1 + rng.below(5);
        bool prev = false;
        for (int a = 0; a < g.n; ++a) {
            bool now = solve_with_a(g, k, r, a);
            if (prev) CHECK(now);
            prev = now;
        }
    }
}

TEST_CASE("solve_distance_fpt spec examples") {
    auto p5 = solve_distance_fpt(path(5), 2, 3);
    CHECK(p5.answer == Answer::yes);
    CHECK(validate(path(5), *p5.witness).ok);

    // K1,4: center needs four neighbors, impossible on a 2-row strip.
    auto k14 = solve_distance_fpt(star(4), 2, 4);
    CHECK(k14.answer == Answer::no);
    CHECK(brute_force_embed(star(4), 2, 4).answer == Answer::no);
}

TEST_CASE("solve_distance_fpt matches the oracle and reports a_G on random connected graphs") {
    ts::Rng rng(47);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + rng.below(5);
        Graph g = ts::random_tree(rng, n);
        int k = 1 + rng.below(3), r = 1 + rng.below(6);
        auto fast = solve_distance_fpt(g, k, r);
        auto slow = brute_force_embed(g, k, r);
        REQUIRE(fast.answer != Answer::unknown);
        REQUIRE(slow.answer != Answer::unknown);
        CHECK(fast.answer == slow.answer);
        auto mda = min_distance_approximation(g, k, r);
        REQUIRE(mda.status == Answer::yes);
        CHECK(fast.achieved_a == mda.value);
        if (fast.answer == Answer::yes) CHECK(validate(g, *fast.witness).ok);
    }
}

TEST_CASE("sweep completeness instrumentation: oracle witness states survive") {
    // For every oracle-found embedding with leftmost vertex v and a = a_f,
    // solve_with_a(v-specific) must answer yes; this is the observable form
    // of Lemma "if grid then not empty".
    ts::Rng rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + rng.below(5);
        Graph g = ts::random_tree(rng, n);
        int k = 1 + rng.below(3), r = 1 + rng.below(4);
        auto res = brute_force_embed(g, k, r);
        if (res.answer != Answer::yes) continue;
        auto rep = distance_approximation(g, *res.witness);
        CHECK(solve_with_a(g, k, r, rep.a_f));
    }
}
