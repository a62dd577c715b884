#include <array>

#include "doctest.h"
#include "gridbed/reductions.hpp"
#include "gridbed/distance_solver.hpp"
#include "test_support.hpp"

using namespace gridbed;
namespace ts = gridbed::testsupport;

TEST_CASE("reduce_sat_to_batteries reproduces the worked example") {
    // (!x1 v x2) and (x1 v x2)
    CnfFormula pi;
    pi.num_vars = 2;
    pi.clauses = {{-1, 2}, {1, 2}};
    auto b = reduce_sat_to_batteries(pi);
    REQUIRE(b.rows == 2);
    REQUIRE(b.cols == 2);
    CHECK(b.cells[0][0] == std::make_pair(1, 0));
    CHECK(b.cells[0][1] == std::make_pair(0, 1));
    CHECK(b.cells[1][0] == std::make_pair(0, 1));
    CHECK(b.cells[1][1] == std::make_pair(0, 1));

    CnfFormula single;
    single.num_vars = 1;
    single.clauses = {{1}};
    auto sb = reduce_sat_to_batteries(single);
    CHECK(sb.cells[0][0] == std::make_pair(0, 1));

    // Cell-wise recheck on random 3-variable formulas.
    ts::Rng rng(91);
    for (int trial = 0; trial < 20; ++trial) {
        CnfFormula f;
        f.num_vars = 3;
        int m = 1 + rng.below(3);
        for (int c = 0; c < m; ++c) {
            std::vector<int> clause;
            for (int v = 1; v <= 3; ++v) {
                int roll = rng.below(3);
                if (roll == 0) clause.push_back(v);
                if (roll == 1) clause.push_back(-v);
            }
            if (clause.empty()) clause.push_back(1);
            f.clauses.push_back(clause);
        }
        auto fb = reduce_sat_to_batteries(f);
        for (int i = 0; i < fb.rows; ++i)
            for (int j = 0; j < fb.cols; ++j) {
                bool pos = false, neg = false;
                for (int lit : f.clauses[i]) {
                    if (lit == j + 1) pos = true;
                    if (lit == -(j + 1)) neg = true;
                }
                CHECK(fb.cells[i][j].first == (pos ? 0 : 1));
                CHECK(fb.cells[i][j].second == (neg ? 0 : 1));
            }
    }
}

TEST_CASE("placement_check on the figure instance") {
    CnfFormula pi;
    pi.num_vars = 2;
    pi.clauses = {{-1, 2}, {1, 2}};
    auto b = reduce_sat_to_batteries(pi);
    // p1 = '-', p2 = '+' corresponds to x1 = F, x2 = T.
    Placement p;
    p.p = {{false, true}, {false, true}};
    auto check = placement_check(b, p);
    CHECK(check.correct);
    CHECK(check.safe);

    // Column-nonuniform placement is never correct.
    Placement bad;
    bad.p = {{false, true}, {true, true}};
    CHECK_FALSE(placement_check(b, bad).correct);

    // All-ones batteries are never safe.
    BatteriesInstance ones;
    ones.rows = 2;
    ones.cols = 2;
    ones.cells.assign(2, std::vector<std::pair<int, int>>(2, {1, 1}));
    Placement any;
    any.p = {{true, false}, {true, false}};
    CHECK_FALSE(placement_check(ones, any).safe);
}

TEST_CASE("batteries_brute_force and the reduce1 equivalence") {
    CnfFormula pi;
    pi.num_vars = 2;
    pi.clauses = {{-1, 2}, {1, 2}};
    auto ans = batteries_brute_force(reduce_sat_to_batteries(pi));
    CHECK(ans.answer == Answer::yes);
    auto pc = placement_check(reduce_sat_to_batteries(pi), *ans.witness);
    CHECK(pc.correct);
    CHECK(pc.safe);

    BatteriesInstance ones;
    ones.rows = 1;
    ones.cols = 2;
    ones.cells.assign(1, std::vector<std::pair<int, int>>(2, {1, 1}));
    CHECK(batteries_brute_force(ones).answer == Answer::no);

    // SAT(pi) == Batteries(reduce1(pi)) over all formulas with <= 3 vars and
    // <= 3 clauses (sampled here; the acceptance suite runs it exhaustively).
    ts::Rng rng(95);
    for (int trial = 0; trial < 120; ++trial) {
        CnfFormula f;
        f.num_vars = 3;
        int m = 1 + rng.below(3);
        bool ok = true;
        for (int c = 0; c < m; ++c) {
            std::vector<int> clause;
            for (int v = 1; v <= 3; ++v) {
                int roll = rng.below(4);
                if (roll == 0) clause.push_back(v);
                if (roll == 1) clause.push_back(-v);
            }
            if (clause.empty()) ok = false;
            f.clauses.push_back(clause);
        }
        if (!ok) continue;
        bool sat = ts::sat_brute_force(f.num_vars, f.clauses);
        auto red = batteries_brute_force(reduce_sat_to_batteries(f));
        REQUIRE(red.answer != Answer::unknown);
        CHECK((red.answer == Answer::yes) == sat);
    }
}

TEST_CASE("grid_frame") {
    auto frame = grid_frame(1, 2);
    // Set-builder recount.
    std::set<Cell> expect;
    int m = 1, n = 2;
    for (int row = 0; row <= 2; ++row)
        for (int col = 0; col <= 8 * n + 4; ++col) expect.insert({row, col});
    for (int row = 12 * m + 2; row <= 12 * m + 4; ++row)
        for (int col = 0; col <= 8 * n + 4; ++col) expect.insert({row, col});
    for (int row = 0; row <= 12 * m + 4; ++row)
        for (int col = 0; col <= 2; ++col) expect.insert({row, col});
    for (int row = 0; row <= 12 * m + 4; ++row)
        for (int col = 8 * n + 2; col <= 8 * n + 4; ++col) expect.insert({row, col});
    CHECK(frame.graph.n == static_cast<int>(expect.size()));
    std::set<Cell> got(frame.coords.begin(), frame.coords.end());
    CHECK(got == expect);

    // Edge set equals unit adjacency on the coordinate set; degree <= 4;
    // connected; and the canonical coordinates validate (frame rigidity).
    int expected_edges = 0;
    for (const Cell& c : expect) {
        if (expect.count({c.row, c.col + 1})) ++expected_edges;
        if (expect.count({c.row + 1, c.col})) ++expected_edges;
    }
    CHECK(frame.graph.edge_count() == expected_edges);
    CHECK(frame.graph.max_degree() <= 4);
    CHECK(is_connected(frame.graph));
    GridEmbedding f;
    f.k = 12 * m + 5;
    f.r = 8 * n + 5;
    for (int v = 0; v < frame.graph.n; ++v)
        f.place(v, {frame.coords[v].row + 1, frame.coords[v].col + 1});
    CHECK(validate(frame.graph, f).ok);
}

TEST_CASE("reduce_batteries_to_grid structure") {
    BatteriesInstance b;
    b.rows = 1;
    b.cols = 1;
    b.cells = {{{0, 0}}};
    auto lg = reduce_batteries_to_grid(b);
    // Layout-table accounting: skeleton + P(14) + N(9) + tees(8) + wires(2).
    auto frame = grid_frame(1, 1);
    int skeleton = frame.graph.n + 9;  // the interior midline row adds 9 cells
    CHECK(lg.graph.n == skeleton + 14 + 9 + 8 + 2);
    CHECK(grid_necessary_filter(lg.graph).pass);

    // The worked 2x2 instance from the figure.
    BatteriesInstance fig;
    fig.rows = 2;
    fig.cols = 2;
    fig.cells = {{{1, 0}, {0, 1}}, {{0, 1}, {0, 1}}};
    auto lg2 = reduce_batteries_to_grid(fig);
    CHECK(grid_necessary_filter(lg2.graph).pass);
    // Voltage edges count: one per 1-voltage: cells have x1+x2 = 1 each -> 4.
    // Structure spot-check via vertex count: skeleton(2x2) + 4 gadgets + sync
    // triple per vertical pair (2 columns) + wires (2 rows x 3).
    auto skel_coords = [&]() {
        std::set<Cell> coords;
        auto fr = grid_frame(2, 2);
        for (const Cell& c : fr.coords) coords.insert(c);
        for (int t = 1; t <= 3; ++t)
            for (int col = 2; col <= 18; ++col) coords.insert({6 * t + 2, col});
        for (int row = 2; row <= 26; ++row) coords.insert({row, 10});
        return coords;
    }();
    CHECK(lg2.graph.n ==
          static_cast<int>(skel_coords.size()) + 4 * 31 + 2 * 3 + 2 * 3);
}

TEST_CASE("construct_batteries_witness validates for every voltage/orientation mix") {
    for (int x1 = 0; x1 <= 1; ++x1) {
        for (int x2 = 0; x2 <= 1; ++x2) {
            for (int sign = 0; sign <= 1; ++sign) {
                BatteriesInstance b;
                b.rows = 1;
                b.cols = 1;
                b.cells = {{{x1, x2}}};
                Placement p;
                p.p = {{sign == 0}};
                int top_voltage = sign == 0 ? x1 : x2;
                if (top_voltage != 0) {
                    // Not safe for a single column; skip.
                    CHECK_FALSE(placement_check(b, p).safe);
                    continue;
                }
                auto f = construct_batteries_witness(b, p);
                auto lg = reduce_batteries_to_grid(b);
                CHECK(validate(lg.graph, f).ok);
            }
        }
    }
}

TEST_CASE("construct_batteries_witness on the worked instance, with a_f bound") {
    BatteriesInstance fig;
    fig.rows = 2;
    fig.cols = 2;
    fig.cells = {{{1, 0}, {0, 1}}, {{0, 1}, {0, 1}}};
    Placement p;
    p.p = {{false, true}, {false, true}};
    auto f = construct_batteries_witness(fig, p);
    auto lg = reduce_batteries_to_grid(fig);
    REQUIRE(validate(lg.graph, f).ok);
    auto rep = distance_approximation(lg.graph, f);
    CHECK(rep.a_f <= 234);
}

TEST_CASE("reduce_3partition") {
    // W = {5,5,5}: B' = B + 3*sum = 15 + 45 = 60 after normalization.
    ThreePartitionInstance inst;
    inst.weights = {5, 5, 5};
    auto red = reduce_3partition(inst);
    CHECK(red.target == 60);
    CHECK(red.r == 64);
    // Container vertex count 2(B+4).
    CHECK(red.graph.n == 2 * 64 + 20 + 20 + 20);
    CHECK(grid_necessary_filter(red.graph).pass);

    ThreePartitionInstance bad;
    bad.weights = {1, 1};
    CHECK_THROWS_AS(reduce_3partition(bad), GridbedError);
}

TEST_CASE("construct_3partition_witness validates") {
    ThreePartitionInstance inst;
    inst.weights = {5, 5, 5};
    auto f = construct_3partition_witness(inst, {{{0, 1, 2}}});
    auto red = reduce_3partition(inst);
    CHECK(validate(red.graph, f).ok);

    // Randomized planted instances.
    ts::Rng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        int m = 1 + rng.below(2);
        std::vector<long long> weights;
        long long B = 9 + rng.below(4);
        std::vector<std::array<int, 3>> partition;
        for (int j = 0; j < m; ++j) {
            long long a = 1 + rng.below(static_cast<int>(B - 2));
            long long b2 = 1 + rng.below(static_cast<int>(B - a - 1));
            long long c = B - a - b2;
            partition.push_back({3 * j, 3 * j + 1, 3 * j + 2});
            weights.push_back(a);
            weights.push_back(b2);
            weights.push_back(c);
        }
        ThreePartitionInstance rinst;
        rinst.weights = weights;
        auto rf = construct_3partition_witness(rinst, partition);
        auto rred = reduce_3partition(rinst);
        CHECK(validate(rred.graph, rf).ok);
        CHECK(rf.k == 3);
        CHECK(rf.r == rred.r);
    }
}

TEST_CASE("3partition m=1 yes-instance agrees with the grid solver") {
    ThreePartitionInstance inst;
    inst.weights = {1, 1, 1};
    auto red = reduce_3partition(inst);
    REQUIRE(red.target == 12);
    REQUIRE(red.r == 16);
    auto direct = brute_force_embed(red.graph, 3, static_cast<int>(red.r), 400'000'000);
    CHECK(direct.answer == Answer::yes);
}

TEST_CASE("reduce_naesat structure on the worked example") {
    CnfFormula phi;
    phi.num_vars = 3;
    phi.clauses = {{-1, -2, -3}, {-1, 2, -3}};
    auto red = reduce_naesat(phi);
    CHECK(is_tree(red.graph));
    CHECK(red.graph.max_degree() <= 4);
    CHECK(grid_necessary_filter(red.graph).pass);

    // Counts recomputed from the construction rules: n = 3, m = 2.
    int n = 3, m = 2;
    int base_path = 2 * n + 3;
    int stars = 10;
    int mains = (n + 2) * 2 * (2 * m + 1);
    int boundary_leaves = 4 * 2 * (2 * m);
    int even_leaves = (n - 1) * 2 * m;
    // Odd leaves: per variable occurrence rule.
    int odd_leaves = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= 2 * m - 1; j += 2) {
            int clause = (j + 1) / 2 - 1;
            bool pos = false, neg = false;
            for (int lit : phi.clauses[clause]) {
                if (lit == i) pos = true;
                if (lit == -i) neg = true;
            }
            odd_leaves += (pos ? 0 : 1) + (neg ? 0 : 1);
        }
    CHECK(red.graph.n == base_path + stars + mains + boundary_leaves + even_leaves + odd_leaves);

    // Single variable, single clause.
    CnfFormula tiny;
    tiny.num_vars = 1;
    tiny.clauses = {{1}};
    auto tred = reduce_naesat(tiny);
    CHECK(is_tree(tred.graph));
}

TEST_CASE("construct_naesat_witness validates on the worked example") {
    CnfFormula phi;
    phi.num_vars = 3;
    phi.clauses = {{-1, -2, -3}, {-1, 2, -3}};
    std::vector<bool> alpha = {true, false, false};
    auto f = construct_naesat_witness(phi, alpha);
    auto red = reduce_naesat(phi);
    CHECK(validate(red.graph, f).ok);

    // Non-NAE assignment throws.
    CHECK_THROWS_AS(construct_naesat_witness(phi, {false, false, false}), GridbedError);
}

TEST_CASE("construct_naesat_witness over exhaustive 2-variable formulas") {
    // All formulas with 1..3 clauses of width <= 2 over {x1, x2}, no
    // tautological clauses; every NAE assignment must yield a valid witness.
    std::vector<std::vector<int>> clause_pool = {{1}, {-1}, {2}, {-2}, {1, 2},
                                                 {1, -2}, {-1, 2}, {-1, -2}};
    int checked = 0;
    for (size_t c1 = 0; c1 < clause_pool.size(); ++c1) {
        for (size_t c2 = c1; c2 <= clause_pool.size(); ++c2) {
            CnfFormula f;
            f.num_vars = 2;
            f.clauses.push_back(clause_pool[c1]);
            if (c2 < clause_pool.size()) f.clauses.push_back(clause_pool[c2]);
            auto red = reduce_naesat(f);
            for (std::uint32_t mask = 0; mask < 4; ++mask) {
                std::vector<bool> alpha = {(mask & 1) != 0, (mask & 2) != 0};
                bool nae = true;
                for (const auto& clause : f.clauses) {
                    bool t = false, fo = false;
                    for (int lit : clause) {
                        bool val = lit > 0 ? alpha[lit - 1] : !alpha[-lit - 1];
                        (val ? t : fo) = true;
                    }
                    if (!t || !fo) nae = false;
                }
                if (!nae) continue;
                auto w = construct_naesat_witness(f, alpha);
                CHECK(validate(red.graph, w).ok);
                ++checked;
            }
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("strip_pack") {
    // Two 2x2 squares into a 2x4 strip.
    auto yes = strip_pack({{2, 2}, {2, 2}}, 2, 4);
    CHECK(yes.answer == Answer::yes);
    CHECK(yes.placements.size() == 2);

    // Area excess.
    CHECK(strip_pack({{2, 2}, {2, 3}}, 2, 4).answer == Answer::no);

    // Unit-dimension rectangles trigger the doubling transform.
    auto unit = strip_pack({{1, 2}, {1, 2}}, 2, 2);
    CHECK(unit.doubled);
    CHECK(unit.answer == Answer::yes);

    // Random agreement with the direct packer (small sizes; the acceptance
    // suite runs the full criterion).
    ts::Rng rng(103);
    for (int trial = 0; trial < 12; ++trial) {
        int count = 1 + rng.below(3);
        std::vector<std::pair<int, int>> rects;
        for (int i = 0; i < count; ++i) rects.push_back({1 + rng.below(2), 1 + rng.below(3)});
        int k = 1 + rng.below(3), w = 1 + rng.below(5);
        auto mine = strip_pack(rects, k, w, 100'000'000);
        if (mine.answer == Answer::unknown) continue;
        bool direct = ts::direct_strip_pack(rects, k, w);
        CHECK((mine.answer == Answer::yes) == direct);
    }
}
