#include "doctest.h"
#include "gridbed/tree_solver.hpp"
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

// Spider: `legs` paths of length `len` glued at a center.
Graph spider(int legs, int len) {
    std::vector<std::pair<int, int>> es;
    int n = 1;
    for (int l = 0; l < legs; ++l) {
        int prev = 0;
        for (int i = 0; i < len; ++i) {
            es.emplace_back(prev, n);
            prev = n++;
        }
    }
    return Graph::make(n, es);
}

// Caterpillar with given spine and one leaf on every spine vertex.
Graph comb(int spine) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < spine; ++i) es.emplace_back(i, i + 1);
    for (int i = 0; i < spine; ++i) es.emplace_back(i, spine + i);
    return Graph::make(2 * spine, es);
}

TreeSolveConstants reduced_constants() {
    TreeSolveConstants c;
    c.c_split = 2;
    c.c_win = 4;
    c.c_env = 5;
    c.c_ret = 6;
    c.c_bud = 4;
    return c;
}

}  // namespace

TEST_CASE("classify_splits") {
    // Spider with three legs of length 5: a one-split center at threshold 3.
    auto cls = classify_splits(spider(3, 5), 3);
    CHECK(cls.kind == SplitClassification::Kind::one_split);
    REQUIRE(cls.split_vertices.size() == 1);
    CHECK(cls.split_vertices[0] == 0);

    // Plus-shaped tree with four legs of length 5: a double-split center.
    auto cls4 = classify_splits(spider(4, 5), 3);
    CHECK(cls4.kind == SplitClassification::Kind::double_split);

    auto none = classify_splits(path(10), 3);
    CHECK(none.kind == SplitClassification::Kind::no_split);

    CHECK_THROWS_AS(classify_splits(Graph::make(3, {{0, 1}}), 1), GridbedError);
}

TEST_CASE("classify_splits counts match removal-and-recount") {
    ts::Rng rng(67);
    for (int trial = 0; trial < 25; ++trial) {
        Graph g = ts::random_tree(rng, 3 + rng.below(12));
        int t = 1 + rng.below(4);
        auto cls = classify_splits(g, t);
        for (int v = 0; v < g.n; ++v) {
            // Oracle: delete v, count components of size >= t.
            std::vector<int> rest;
            for (int u = 0; u < g.n; ++u)
                if (u != v) rest.push_back(u);
            Graph sub = g.induced(rest);
            int large = 0;
            for (const auto& comp : connected_components(sub))
                if (static_cast<int>(comp.size()) >= t) ++large;
            CHECK(cls.large_component_count[v] == large);
        }
    }
}

TEST_CASE("find_pt_path") {
    // Long path, t = 1: central subpath, full coverage.
    auto pt = find_pt_path(path(20), 1);
    REQUIRE(pt.has_value());
    auto dist_ok = [&](const Graph& g, const PtPath& p) {
        auto d = all_pairs_distances(g);
        for (int v = 0; v < g.n; ++v) {
            int best = 1 << 28;
            for (int u : p.path) best = std::min(best, d[v][u]);
            if (best > p.radius) return false;
            CHECK(d[v][p.pc[v]] == best);
        }
        return true;
    };
    CHECK(dist_ok(path(20), *pt));

    // Caterpillar, t = 1: the spine covers everything.
    Graph cat = comb(5);
    auto cpt = find_pt_path(cat, 1);
    REQUIRE(cpt.has_value());
    CHECK(dist_ok(cat, *cpt));

    // Random split-free trees pass the coverage check.
    ts::Rng rng(71);
    for (int trial = 0; trial < 25; ++trial) {
        Graph g = ts::random_tree(rng, 3 + rng.below(10));
        int t = 2 + rng.below(3);
        if (classify_splits(g, t).kind != SplitClassification::Kind::no_split) continue;
        auto p = find_pt_path(g, t);
        if (p.has_value()) CHECK(dist_ok(g, *p));
    }
}

TEST_CASE("directional_sweep_embed on bare paths") {
    Graph p10 = path(10);
    auto pt = find_pt_path(p10, 0);
    REQUIRE(pt.has_value());
    REQUIRE(pt->path.size() == 10);  // radius 0: the path covers itself

    SweepSpec spec;
    spec.allowed = {Direction::up};
    spec.wrong_budget = 0;
    spec.k = 10;
    spec.r = 1;
    spec.retained_groups = 1;
    auto res = directional_sweep_embed(p10, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, *pt, spec, 4);
    CHECK(!res.variants.empty());
    for (const auto& v : res.variants) {
        GridEmbedding norm = normalized(v);
        CHECK(norm.k == 10);
        CHECK(norm.r == 1);
    }

    // Extent bound k = 5 kills the vertical line.
    spec.k = 5;
    auto res2 = directional_sweep_embed(p10, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, *pt, spec, 4);
    CHECK(res2.variants.empty());
}

TEST_CASE("directional_sweep_embed agrees with direction-filtered oracle on caterpillars") {
    ts::Rng rng(73);
    for (int trial = 0; trial < 12; ++trial) {
        Graph g = ts::random_caterpillar_forest(rng, 1, 4, 1);
        if (!is_tree(g) || g.n > 9) continue;
        int k = 2 + rng.below(2), r = 2 + rng.below(3);
        int budget = 1;
        auto pt = find_pt_path(g, 1);
        if (!pt.has_value()) continue;
        SweepSpec spec;
        spec.allowed = {Direction::up, Direction::right};
        spec.wrong_budget = budget;
        spec.k = k;
        spec.r = r;
        spec.retained_groups = 8;  // wide window: exact collision checking
        std::vector<int> all(g.n);
        for (int v = 0; v < g.n; ++v) all[v] = v;
        auto swept = directional_sweep_embed(g, all, *pt, spec, 256);

        // Oracle: enumerate all embeddings; keep those where P moves in the
        // allowed directions except at most `budget` edges.
        bool oracle_any = false;
        ts::unpruned_enumerate(g, k, r, 100'000'000, [&](const GridEmbedding& f) {
            auto prof = path_direction_profile(f, pt->path);
            if (prof.down + prof.left <= budget) oracle_any = true;
            return !oracle_any;
        });
        CHECK(!swept.variants.empty() == oracle_any);
    }
}

TEST_CASE("solve_tree spec examples at reduced constants") {
    auto c = reduced_constants();

    auto p12 = solve_tree(path(12), 3, 4, kDefaultBudget, c);
    CHECK(p12.result.answer == Answer::yes);
    CHECK(validate(path(12), *p12.result.witness).ok);
    CHECK(brute_force_embed(path(12), 3, 4).answer == Answer::yes);

    // Plus-shape tree, four legs of length 3: 7 x 7 via the double-split case.
    Graph plus = spider(4, 3);
    auto pres = solve_tree(plus, 7, 7, kDefaultBudget, c);
    CHECK(pres.result.answer == Answer::yes);
    CHECK(validate(plus, *pres.result.witness).ok);
    CHECK(pres.used_case == SplitClassification::Kind::double_split);

    // Spider with five legs: degree 5 center, filtered immediately.
    CHECK(solve_tree(spider(5, 5), 6, 6, kDefaultBudget, c).result.answer == Answer::no);
}

TEST_CASE("solve_tree yes answers are sound on random trees") {
    ts::Rng rng(79);
    auto c = reduced_constants();
    int yes_count = 0;
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + rng.below(9);
        Graph g = ts::random_tree(rng, n);
        int k = 1 + rng.below(4), r = 1 + rng.below(4);
        auto res = solve_tree(g, k, r, 2'000'000, c);
        if (res.result.answer == Answer::yes) {
            ++yes_count;
            REQUIRE(res.result.witness.has_value());
            CHECK(validate(g, *res.result.witness).ok);
            CHECK(brute_force_embed(g, k, r).answer == Answer::yes);
        }
    }
    CHECK(yes_count > 0);
}

TEST_CASE("split-vertex lemma holds on oracle witnesses") {
    // For every embeddable tree and oracle witness f, the classification at
    // threshold 81 a_f^2 lands in one of the four allowed verdicts.
    ts::Rng rng(83);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + rng.below(9);
        Graph g = ts::random_tree(rng, n);
        auto res = brute_force_embed(g, std::max(1, n), std::max(1, n));
        if (res.answer != Answer::yes) continue;
        auto rep = distance_approximation(g, *res.witness);
        int threshold = std::max(1, 81 * rep.a_f * rep.a_f);
        auto cls = classify_splits(g, threshold);
        CHECK(cls.kind != SplitClassification::Kind::too_many);
    }
}

TEST_CASE("path-direction lemma holds on oracle witnesses of trees") {
    ts::Rng rng(87);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + rng.below(8);
        Graph g = ts::random_tree(rng, n);
        int k = 2 + rng.below(3), r = 2 + rng.below(3);
        auto res = brute_force_embed(g, k, r);
        if (res.answer != Answer::yes) continue;
        auto rep = distance_approximation(g, *res.witness);
        // Every leaf-to-leaf path in the tree.
        auto d = all_pairs_distances(g);
        for (int u = 0; u < g.n; ++u) {
            for (int v = u + 1; v < g.n; ++v) {
                // Unique tree path from u to v.
                std::vector<int> pathv = {u};
                int cur = u;
                while (cur != v) {
                    for (int w : g.adj[cur])
                        if (d[w][v] == d[cur][v] - 1) {
                            cur = w;
                            break;
                        }
                    pathv.push_back(cur);
                }
                auto prof = path_direction_profile(*res.witness, pathv);
                CHECK(std::min(prof.up, prof.down) <= rep.a_f + 1);
                CHECK(std::min(prof.left, prof.right) <= rep.a_f + 1);
            }
        }
    }
}
