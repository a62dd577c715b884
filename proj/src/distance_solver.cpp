#include "gridbed/distance_solver.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace gridbed {

std::optional<BucketPartition> bucketize(const Graph& g, int v, int k, int a, int r,
                                         BucketReject* reject) {
    if (!is_connected(g)) throw GridbedError("bucketize: graph not connected");
    if (v < 0 || v >= g.n) throw GridbedError("bucketize: vertex out of range");
    auto dist = distances_from(g, v);
    for (int u = 0; u < g.n; ++u) {
        if (dist[u] - a > r) {
            if (reject) reject->reason = "distance bound: d(u,v) - a > r";
            return std::nullopt;
        }
    }
    BucketPartition part;
    part.source = v;
    part.width = k + a;
    for (int u = 0; u < g.n; ++u) {
        int i = dist[u] / (k + a);
        if (static_cast<int>(part.buckets.size()) <= i) part.buckets.resize(i + 1);
        part.buckets[i].push_back(u);
    }
    for (const auto& bucket : part.buckets) {
        if (static_cast<int>(bucket.size()) > 2 * k * (k + a)) {
            if (reject) reject->reason = "bucket bound: |D_i| > 2k(k+a)";
            return std::nullopt;
        }
    }
    return part;
}

namespace {

using Placement = std::vector<std::pair<int, std::pair<int, int>>>;  // vertex -> (row, abs col)

// Backtracking embedder for one band: places `order` into rows 0..k-1 and
// absolute columns [band_lo, band_lo + width - 1], with fixed glue positions
// in `pos` and full edge checks against everything in `pos`.
struct BandEmbedder {
    const Graph& g;
    int k, band_width, band_lo;
    int pin_vertex = -1;  // must land on absolute column 0
    std::uint64_t* nodes;
    std::uint64_t budget;
    bool* budget_hit;

    std::vector<int> vert_at;
    std::map<int, std::pair<int, int>> pos;
    std::vector<int> order;
    std::function<void(const Placement&)> emit;

    void run(size_t idx, Placement& placed) {
        if (*budget_hit) return;
        if (++*nodes > budget) {
            *budget_hit = true;
            return;
        }
        if (idx == order.size()) {
            emit(placed);
            return;
        }
        int u = order[idx];
        for (int row = 0; row < k; ++row) {
            for (int col = 0; col < band_width; ++col) {
                if (vert_at[row * band_width + col] >= 0) continue;
                std::pair<int, int> cell{row, band_lo + col};
                if (u == pin_vertex && cell.second != 0) continue;
                bool ok = true;
                for (int w : g.adj[u]) {
                    auto it = pos.find(w);
                    if (it != pos.end()) {
                        int d = std::abs(cell.first - it->second.first) +
                                std::abs(cell.second - it->second.second);
                        if (d != 1) {
                            ok = false;
                            break;
                        }
                    }
                }
                if (!ok) continue;
                vert_at[row * band_width + col] = u;
                pos[u] = cell;
                placed.push_back({u, cell});
                run(idx + 1, placed);
                placed.pop_back();
                pos.erase(u);
                vert_at[row * band_width + col] = -1;
                if (*budget_hit) return;
            }
        }
    }
};

// Runs one block step from a fixed glue configuration, emitting every
// (used-next subset, placement) combination that passes the outward-neighbor
// and column-extent checks.
void run_block_step(const Graph& g, const BucketPartition& part, int k, int a, int r, int step,
                    const std::vector<int>& glue_right, const std::vector<int>& glue_prev,
                    int prev_max_col, std::uint64_t* nodes, std::uint64_t budget, bool* budget_hit,
                    const std::function<void(const std::set<int>&, const Placement&, int)>& emit) {
    int width = k + a;
    int band_lo = step * width;
    std::vector<int> bucket_of(g.n, 0);
    for (size_t s = 0; s < part.buckets.size(); ++s)
        for (int u : part.buckets[s]) bucket_of[u] = static_cast<int>(s);

    std::vector<int> current = step < static_cast<int>(part.buckets.size())
                                   ? part.buckets[step]
                                   : std::vector<int>{};
    std::vector<int> next = step + 1 < static_cast<int>(part.buckets.size())
                                ? part.buckets[step + 1]
                                : std::vector<int>{};
    std::set<int> used_prev;
    for (int u : glue_right)
        if (u >= 0 && bucket_of[u] == step) used_prev.insert(u);
    for (int u : glue_prev)
        if (u >= 0 && bucket_of[u] == step) used_prev.insert(u);
    // used_prev from the glue columns is not enough: borrowed vertices may sit
    // anywhere in the previous band. The caller passes them via glue columns
    // only in the compressed variant; the exact variant passes whole prefixes.
    // Here the caller must pre-filter `current`.
    std::vector<int> core;
    for (int u : current)
        if (!used_prev.count(u)) core.push_back(u);

    int nn = static_cast<int>(next.size());
    for (int mask = 0; mask < (1 << nn); ++mask) {
        if (*budget_hit) return;
        std::set<int> used_next;
        std::vector<int> to_place = core;
        for (int b = 0; b < nn; ++b)
            if (mask & (1 << b)) {
                used_next.insert(next[b]);
                to_place.push_back(next[b]);
            }
        BandEmbedder be{g, k, width, band_lo, (step == 0) ? part.source : -1,
                        nodes, budget, budget_hit};
        be.vert_at.assign(k * width, -1);
        be.order = to_place;
        for (int row = 0; row < k; ++row) {
            if (glue_right[row] >= 0) be.pos[glue_right[row]] = {row, band_lo - 1};
            if (glue_prev[row] >= 0) be.pos[glue_prev[row]] = {row, band_lo - 2};
        }
        be.emit = [&](const Placement& placed) {
            int last_col = band_lo + width - 1;
            auto in_prefix = [&](int x) {
                if (bucket_of[x] <= step) return true;
                return bucket_of[x] == step + 1 && used_next.count(x) > 0;
            };
            int max_col = prev_max_col;
            for (const auto& [u, cell] : placed) max_col = std::max(max_col, cell.second);
            if (max_col >= r) return;
            std::vector<int> members;
            for (const auto& [u, cell] : placed) members.push_back(u);
            for (int row = 0; row < k; ++row)
                if (glue_right[row] >= 0) members.push_back(glue_right[row]);
            for (int u : members) {
                auto cu = be.pos.at(u);
                for (int w : g.adj[u]) {
                    if (in_prefix(w)) continue;
                    if (cu.second != last_col) return;
                }
            }
            emit(used_next, placed, max_col);
        };
        Placement placed;
        be.run(0, placed);
    }
}

}  // namespace

std::set<SweepState> sweep_iteration(const Graph& g, const BucketPartition& part, int k, int a,
                                     int r, int step, const std::set<SweepState>& previous,
                                     std::uint64_t budget, bool* budget_hit) {
    if (budget_hit) *budget_hit = false;
    std::uint64_t nodes = 0;
    bool hit = false;
    int width = k + a;
    int band_lo = step * width;
    std::set<SweepState> out;
    for (const auto& state : previous) {
        // Compressed variant: the used set is carried explicitly; remove it
        // from the current bucket regardless of glue-column membership.
        std::vector<int> glue_right = state.right_col, glue_prev = state.prev_col;
        if (glue_right.empty()) glue_right.assign(k, -1);
        if (glue_prev.empty()) glue_prev.assign(k, -1);
        // Build a view of the graph where used vertices are excluded from the
        // current bucket: reuse run_block_step by filtering through a copy of
        // the partition.
        BucketPartition filtered = part;
        if (step < static_cast<int>(filtered.buckets.size())) {
            std::vector<int> cur;
            for (int u : filtered.buckets[step])
                if (!std::count(state.used.begin(), state.used.end(), u)) cur.push_back(u);
            filtered.buckets[step] = cur;
        }
        run_block_step(g, filtered, k, a, r, step, glue_right, glue_prev, band_lo - 1, &nodes,
                       budget, &hit,
                       [&](const std::set<int>& used_next, const Placement& placed, int) {
                           SweepState ns;
                           ns.used.assign(used_next.begin(), used_next.end());
                           ns.right_col.assign(k, -1);
                           ns.prev_col.assign(k, -1);
                           int last_col = band_lo + width - 1;
                           for (const auto& [u, cell] : placed) {
                               if (cell.second == last_col) ns.right_col[cell.first] = u;
                               if (cell.second == last_col - 1) ns.prev_col[cell.first] = u;
                           }
                           out.insert(std::move(ns));
                       });
        if (hit) break;
    }
    if (budget_hit) *budget_hit = hit;
    return out;
}

namespace detail {

struct SweepOutcome {
    bool success = false;
    bool budget_hit = false;
    GridEmbedding witness;  // on success, 1-based
};

// Exact sweep: states are whole prefixes, and final acceptance additionally
// requires the assembled embedding to satisfy a_f <= a.
SweepOutcome sweep_exact(const Graph& g, const BucketPartition& part, int k, int a, int r,
                         const std::vector<std::vector<int>>& dist, std::uint64_t budget,
                         std::uint64_t* nodes) {
    SweepOutcome out;
    int width = k + a;
    int j = static_cast<int>(part.buckets.size()) - 1;
    std::vector<int> bucket_of(g.n, 0);
    for (size_t s = 0; s < part.buckets.size(); ++s)
        for (int u : part.buckets[s]) bucket_of[u] = static_cast<int>(s);

    std::set<Placement> frontier = {Placement{}};
    bool hit = false;

    for (int step = 0; step <= j + 1 && !frontier.empty(); ++step) {
        int band_lo = step * width;
        std::set<Placement> next_frontier;
        for (const Placement& prefix : frontier) {
            if (hit) break;
            std::map<int, std::pair<int, int>> pos(prefix.begin(), prefix.end());
            std::vector<int> glue_right(k, -1), glue_prev(k, -1);
            int prev_max_col = -1;
            for (const auto& [u, cell] : prefix) {
                prev_max_col = std::max(prev_max_col, cell.second);
                if (cell.second == band_lo - 1) glue_right[cell.first] = u;
                if (cell.second == band_lo - 2) glue_prev[cell.first] = u;
            }
            BucketPartition filtered = part;
            if (step < static_cast<int>(filtered.buckets.size())) {
                std::vector<int> cur;
                for (int u : filtered.buckets[step])
                    if (!pos.count(u)) cur.push_back(u);
                filtered.buckets[step] = cur;
            }
            run_block_step(
                g, filtered, k, a, r, step, glue_right, glue_prev, prev_max_col, nodes, budget,
                &hit, [&](const std::set<int>&, const Placement& placed, int) {
                    Placement combined = prefix;
                    combined.insert(combined.end(), placed.begin(), placed.end());
                    std::sort(combined.begin(), combined.end());
                    next_frontier.insert(std::move(combined));
                });
        }
        frontier = std::move(next_frontier);
        if (hit) break;
    }
    out.budget_hit = hit;

    for (const Placement& full : frontier) {
        if (static_cast<int>(full.size()) != g.n) continue;
        GridEmbedding f;
        f.k = k;
        f.r = r;
        for (const auto& [u, cell] : full) f.place(u, {cell.first + 1, cell.second + 1});
        bool ok = true;
        for (int u = 0; u < g.n && ok; ++u)
            for (int v = u + 1; v < g.n; ++v)
                if (dist[u][v] - grid_distance(f, u, v) > a) {
                    ok = false;
                    break;
                }
        if (!ok) continue;
        out.success = true;
        out.witness = std::move(f);
        return out;
    }
    return out;
}

}  // namespace detail

bool solve_with_a(const Graph& g, int k, int r, int a, std::uint64_t budget, bool* budget_hit) {
    if (!is_connected(g)) throw GridbedError("solve_with_a: graph not connected");
    if (budget_hit) *budget_hit = false;
    if (g.n == 0) return true;
    auto dist = all_pairs_distances(g);
    std::uint64_t nodes = 0;
    for (int v = 0; v < g.n; ++v) {
        auto part = bucketize(g, v, k, a, r);
        if (!part) continue;
        auto res = detail::sweep_exact(g, *part, k, a, r, dist, budget, &nodes);
        if (res.budget_hit && budget_hit) *budget_hit = true;
        if (res.success) return true;
    }
    return false;
}

SolveResult solve_distance_fpt(const Graph& g, int k, int r, std::uint64_t budget) {
    if (!is_connected(g)) throw GridbedError("solve_distance_fpt: graph not connected");
    SolveResult res;
    if (g.n == 0) {
        res.answer = Answer::yes;
        res.achieved_a = 0;
        res.witness = GridEmbedding{k, r, {}};
        return res;
    }
    if (g.n > k * r) {
        res.answer = Answer::no;
        res.achieved_a = g.n;
        return res;
    }
    auto dist = all_pairs_distances(g);
    std::uint64_t nodes = 0;
    bool any_budget_hit = false;
    for (int a = 0; a < std::max(1, g.n); ++a) {
        for (int v = 0; v < g.n; ++v) {
            auto part = bucketize(g, v, k, a, r);
            if (!part) continue;
            auto sw = detail::sweep_exact(g, *part, k, a, r, dist, budget, &nodes);
            res.stats.nodes = nodes;
            if (sw.budget_hit) any_budget_hit = true;
            if (sw.success) {
                auto check = validate(g, sw.witness);
                if (!check.ok)
                    throw GridbedError("solve_distance_fpt: internal witness invalid: " +
                                       check.reason);
                res.answer = Answer::yes;
                res.witness = std::move(sw.witness);
                res.achieved_a = a;
                return res;
            }
        }
        if (any_budget_hit) {
            res.answer = Answer::unknown;
            return res;
        }
    }
    res.answer = Answer::no;
    res.achieved_a = g.n;
    res.stats.nodes = nodes;
    return res;
}

}  // namespace gridbed
