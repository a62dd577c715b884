#include "gridbed/tree_solver.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>

namespace gridbed {

SplitClassification classify_splits(const Graph& tree, int threshold) {
    if (!is_tree(tree)) throw GridbedError("classify_splits: input is not a tree");
    SplitClassification out;
    out.threshold = threshold;
    out.large_component_count.assign(tree.n, 0);
    if (tree.n == 0) return out;

    // Rooted subtree sizes.
    std::vector<int> parent(tree.n, -1), order;
    {
        std::vector<int> seen(tree.n, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            order.push_back(v);
            for (int w : tree.adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    parent[w] = v;
                    q.push(w);
                }
        }
    }
    std::vector<int> size(tree.n, 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[*it] >= 0) size[parent[*it]] += size[*it];

    std::vector<int> ones, doubles;
    for (int v = 0; v < tree.n; ++v) {
        int large = 0;
        for (int w : tree.adj[v]) {
            int comp = (parent[w] == v) ? size[w] : tree.n - size[v];
            if (comp >= threshold) ++large;
        }
        out.large_component_count[v] = large;
        if (large == 3) ones.push_back(v);
        if (large == 4) doubles.push_back(v);
    }
    using Kind = SplitClassification::Kind;
    if (doubles.size() == 1 && ones.empty()) {
        out.kind = Kind::double_split;
        out.split_vertices = doubles;
    } else if (doubles.empty() && ones.size() == 1) {
        out.kind = Kind::one_split;
        out.split_vertices = ones;
    } else if (doubles.empty() && ones.size() == 2) {
        out.kind = Kind::two_one_splits;
        out.split_vertices = ones;
    } else if (doubles.empty() && ones.empty()) {
        out.kind = Kind::no_split;
    } else {
        out.kind = Kind::too_many;
        out.split_vertices = ones;
        out.split_vertices.insert(out.split_vertices.end(), doubles.begin(), doubles.end());
    }
    return out;
}

std::optional<PtPath> find_pt_path(const Graph& tree, int t) {
    if (!is_tree(tree)) throw GridbedError("find_pt_path: input is not a tree");
    PtPath out;
    out.radius = t;
    if (tree.n == 0) return out;

    // Subtree sizes as in classify_splits.
    std::vector<int> parent(tree.n, -1), order;
    {
        std::vector<int> seen(tree.n, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            order.push_back(v);
            for (int w : tree.adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    parent[w] = v;
                    q.push(w);
                }
        }
    }
    std::vector<int> size(tree.n, 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[*it] >= 0) size[parent[*it]] += size[*it];

    auto comp_sizes = [&](int v) {
        std::vector<int> cs;
        for (int w : tree.adj[v]) cs.push_back(parent[w] == v ? size[w] : tree.n - size[v]);
        return cs;
    };

    std::vector<int> marked;
    for (int v = 0; v < tree.n; ++v) {
        int big = 0;
        for (int c : comp_sizes(v))
            if (c > t) ++big;
        if (big >= 2) marked.push_back(v);
    }

    if (marked.empty()) {
        int best = 0, best_max = tree.n + 1;
        for (int v = 0; v < tree.n; ++v) {
            int mx = 0;
            for (int c : comp_sizes(v)) mx = std::max(mx, c);
            if (mx < best_max) {
                best_max = mx;
                best = v;
            }
        }
        out.path = {best};
    } else {
        // The marked set must induce a path.
        std::vector<int> in_marked(tree.n, 0);
        for (int v : marked) in_marked[v] = 1;
        std::vector<std::vector<int>> madj(tree.n);
        for (auto [u, v] : tree.edges)
            if (in_marked[u] && in_marked[v]) {
                madj[u].push_back(v);
                madj[v].push_back(u);
            }
        int ends = 0, start = -1;
        for (int v : marked) {
            if (madj[v].size() > 2) return std::nullopt;
            if (madj[v].size() <= 1) {
                ++ends;
                if (start < 0) start = v;
            }
        }
        if (marked.size() == 1) {
            out.path = {marked[0]};
        } else {
            if (ends != 2) return std::nullopt;
            std::vector<int> path = {start};
            int prev = -1, cur = start;
            while (true) {
                int nxt = -1;
                for (int w : madj[cur])
                    if (w != prev) nxt = w;
                if (nxt < 0) break;
                path.push_back(nxt);
                prev = cur;
                cur = nxt;
            }
            if (path.size() != marked.size()) return std::nullopt;  // disconnected marks
            out.path = std::move(path);
        }
    }

    // Closest-path-vertex map; ties to the earlier path index.
    out.pc.assign(tree.n, -1);
    std::queue<int> q;
    for (int v : out.path) {
        out.pc[v] = v;
        q.push(v);
    }
    std::vector<int> dist(tree.n, -1);
    for (int v : out.path) dist[v] = 0;
    int maxdist = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : tree.adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                out.pc[w] = out.pc[v];
                maxdist = std::max(maxdist, dist[w]);
                q.push(w);
            }
    }
    if (maxdist > t) return std::nullopt;
    return out;
}

namespace {

using IntCell = std::pair<int, int>;  // (row, col), any integers

struct Extents {
    bool any = false;
    int minr = 0, maxr = 0, minc = 0, maxc = 0;
    void add(IntCell c) {
        if (!any) {
            any = true;
            minr = maxr = c.first;
            minc = maxc = c.second;
        } else {
            minr = std::min(minr, c.first);
            maxr = std::max(maxr, c.first);
            minc = std::min(minc, c.second);
            maxc = std::max(maxc, c.second);
        }
    }
    int rows() const { return any ? maxr - minr + 1 : 0; }
    int cols() const { return any ? maxc - minc + 1 : 0; }
};

struct SweepNode {
    int parent = -1;
    std::vector<std::pair<int, IntCell>> placed;  // this group's placements
};

Direction step_direction(IntCell from, IntCell to) {
    if (to.first == from.first + 1) return Direction::up;
    if (to.first == from.first - 1) return Direction::down;
    if (to.second == from.second + 1) return Direction::right;
    return Direction::left;
}

}  // namespace

SweepResult directional_sweep_embed(const Graph& tree, const std::vector<int>& part,
                                    const PtPath& p, const SweepSpec& spec, int variant_cap) {
    SweepResult out;
    std::vector<char> in_part(tree.n, 0);
    for (int v : part) in_part[v] = 1;

    // Environment preload.
    std::map<int, IntCell> env_pos;
    Extents env_ext;
    for (const auto& [v, c] : spec.environment.pos) {
        env_pos[v] = {c.row, c.col};
        env_ext.add({c.row, c.col});
    }
    auto in_window = [&](IntCell c) {
        return spec.win_rows > 0 && c.first >= 1 && c.first <= spec.win_rows && c.second >= 1 &&
               c.second <= spec.win_cols;
    };

    // Placement groups along the path; environment vertices are fixed.
    size_t nsteps = p.path.size();
    std::vector<std::vector<int>> group(nsteps);
    for (int v : part) {
        if (env_pos.count(v)) continue;
        if (p.pc[v] < 0) continue;  // not covered: caller passed a foreign vertex
        for (size_t i = 0; i < nsteps; ++i)
            if (p.path[i] == p.pc[v]) {
                group[i].push_back(v);
                break;
            }
    }
    // BFS order within each group from the path vertex; environment vertices
    // are traversed (their cells are fixed) but never placed.
    auto group_order = [&](size_t i) {
        std::vector<int> order;
        std::map<int, int> par;
        int root = p.path[i];
        std::queue<int> q;
        std::set<int> members(group[i].begin(), group[i].end());
        std::set<int> seen = {root};
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            if (members.count(v)) order.push_back(v);
            for (int w : tree.adj[v]) {
                if (seen.count(w)) continue;
                if (!in_part[w]) continue;
                bool is_env = env_pos.count(w) != 0;
                if (!is_env && p.pc[w] != p.pc[root]) continue;
                seen.insert(w);
                par[w] = v;
                q.push(w);
            }
        }
        return std::make_pair(order, par);
    };

    struct Key {
        int wrong;
        std::vector<std::pair<int, IntCell>> retained;
        int minr, maxr, minc, maxc;
        auto operator<=>(const Key&) const = default;
    };

    std::vector<SweepNode> arena;
    std::map<Key, int> frontier;
    std::map<Key, int> wrong_of;
    std::uint64_t nodes = 0;
    bool truncated = false;

    // Initial state: only the environment.
    {
        Key k0{0, {}, env_ext.minr, env_ext.maxr, env_ext.minc, env_ext.maxc};
        if (!env_ext.any) k0 = Key{0, {}, 0, 0, 0, 0};
        arena.push_back({-1, {}});
        frontier[k0] = 0;
        wrong_of[k0] = 0;
    }

    int retained_window = std::max(1, spec.retained_groups);

    for (size_t step = 0; step < nsteps && !frontier.empty(); ++step) {
        auto [order, par] = group_order(step);
        int root = p.path[step];
        bool root_fixed = env_pos.count(root) != 0;
        std::map<Key, int> next_frontier;
        std::map<Key, int> next_wrong;

        for (const auto& [key, node_idx] : frontier) {
            if (truncated) break;
            // Reconstruct the retained placement map.
            std::map<int, IntCell> pos = env_pos;
            std::set<IntCell> occupied;
            for (const auto& [v, c] : env_pos) occupied.insert(c);
            for (const auto& [v, c] : key.retained) {
                pos[v] = c;
                occupied.insert(c);
            }
            Extents ext;
            ext.any = true;
            ext.minr = key.minr;
            ext.maxr = key.maxr;
            ext.minc = key.minc;
            ext.maxc = key.maxc;
            if (!env_ext.any && step == 0 && key.retained.empty()) ext.any = false;

            // Candidate cells for the path vertex of this group.
            std::vector<std::pair<IntCell, int>> root_options;  // (cell, wrong-delta)
            if (root_fixed) {
                root_options.push_back({env_pos[root], 0});
            } else {
                std::vector<IntCell> cells;
                if (step == 0) {
                    // Anchor: next to an already placed neighbor, else origin.
                    int anchor = -1;
                    for (int w : tree.adj[root])
                        if (pos.count(w)) anchor = w;
                    if (anchor >= 0) {
                        IntCell a = pos[anchor];
                        cells = {{a.first + 1, a.second}, {a.first - 1, a.second},
                                 {a.first, a.second + 1}, {a.first, a.second - 1}};
                    } else {
                        cells = {{0, 0}};
                    }
                    for (IntCell c : cells) root_options.push_back({c, 0});
                } else {
                    IntCell prev = pos.at(p.path[step - 1]);
                    for (IntCell c : {IntCell{prev.first + 1, prev.second},
                                      IntCell{prev.first - 1, prev.second},
                                      IntCell{prev.first, prev.second + 1},
                                      IntCell{prev.first, prev.second - 1}}) {
                        Direction d = step_direction(prev, c);
                        int delta = spec.allowed.count(d) ? 0 : 1;
                        root_options.push_back({c, delta});
                    }
                }
            }
            // Wrong-direction delta for a fixed root with a fixed predecessor.
            if (root_fixed && step > 0) {
                IntCell prev = pos.count(p.path[step - 1]) ? pos.at(p.path[step - 1]) : IntCell{0, 0};
                if (pos.count(p.path[step - 1])) {
                    Direction d = step_direction(prev, env_pos[root]);
                    root_options[0].second = spec.allowed.count(d) ? 0 : 1;
                }
            }

            for (auto [root_cell, wrong_delta] : root_options) {
                if (truncated) break;
                int wrong_now = key.wrong + wrong_delta;
                if (wrong_now > spec.wrong_budget) continue;

                // Backtracking placement of the whole group.
                std::vector<std::pair<int, IntCell>> placed;
                std::function<void(size_t)> rec = [&](size_t idx) {
                    if (truncated) return;
                    if (++nodes > spec.budget) {
                        truncated = true;
                        return;
                    }
                    if (idx == order.size()) {
                        Extents e2 = ext;
                        for (const auto& [v, c] : placed) e2.add(c);
                        if (!root_fixed) e2.add(root_cell);
                        if (e2.rows() > spec.k || e2.cols() > spec.r) return;
                        // Retire out-of-window groups and form the new key.
                        Key nk;
                        nk.wrong = wrong_now;
                        nk.minr = e2.minr;
                        nk.maxr = e2.maxr;
                        nk.minc = e2.minc;
                        nk.maxc = e2.maxc;
                        for (const auto& [v, c] : key.retained) {
                            size_t gi = 0;
                            for (; gi < nsteps; ++gi)
                                if (p.path[gi] == p.pc[v]) break;
                            if (static_cast<int>(step - gi) < retained_window)
                                nk.retained.push_back({v, c});
                        }
                        if (!root_fixed) nk.retained.push_back({root, root_cell});
                        for (const auto& [v, c] : placed) nk.retained.push_back({v, c});
                        std::sort(nk.retained.begin(), nk.retained.end());
                        auto it = next_wrong.find(nk);
                        if (it != next_wrong.end() && it->second <= nk.wrong) return;
                        arena.push_back({node_idx, placed});
                        if (!root_fixed)
                            arena.back().placed.push_back({root, root_cell});
                        next_frontier[nk] = static_cast<int>(arena.size()) - 1;
                        next_wrong[nk] = nk.wrong;
                        return;
                    }
                    int u = order[idx];
                    IntCell base = root_cell;
                    if (par.count(u)) {
                        auto itp = pos.find(par.at(u));
                        if (itp != pos.end()) base = itp->second;
                    }
                    for (IntCell c : {IntCell{base.first + 1, base.second},
                                      IntCell{base.first - 1, base.second},
                                      IntCell{base.first, base.second + 1},
                                      IntCell{base.first, base.second - 1}}) {
                        if (occupied.count(c)) continue;
                        if (in_window(c)) continue;
                        bool ok = true;
                        for (int w : tree.adj[u]) {
                            auto itw = pos.find(w);
                            if (itw != pos.end()) {
                                int dd = std::abs(itw->second.first - c.first) +
                                         std::abs(itw->second.second - c.second);
                                if (dd != 1) {
                                    ok = false;
                                    break;
                                }
                            }
                        }
                        if (!ok) continue;
                        pos[u] = c;
                        occupied.insert(c);
                        placed.push_back({u, c});
                        rec(idx + 1);
                        placed.pop_back();
                        occupied.erase(c);
                        pos.erase(u);
                        if (truncated) return;
                    }
                };
                // Place the root first.
                if (!root_fixed) {
                    if (occupied.count(root_cell)) continue;
                    if (in_window(root_cell)) continue;
                    bool ok = true;
                    for (int w : tree.adj[root]) {
                        auto itw = pos.find(w);
                        if (itw != pos.end()) {
                            int dd = std::abs(itw->second.first - root_cell.first) +
                                     std::abs(itw->second.second - root_cell.second);
                            if (dd != 1) ok = false;
                        }
                    }
                    if (!ok) continue;
                    pos[root] = root_cell;
                    occupied.insert(root_cell);
                    rec(0);
                    occupied.erase(root_cell);
                    pos.erase(root);
                } else {
                    rec(0);
                }
            }
        }
        frontier = std::move(next_frontier);
        wrong_of = std::move(next_wrong);
    }

    // Replay survivors into full piece embeddings; validate each one.
    for (const auto& [key, idx] : frontier) {
        if (static_cast<int>(out.variants.size()) >= variant_cap) {
            out.truncated = true;
            break;
        }
        std::map<int, IntCell> full = env_pos;
        int cur = idx;
        bool clash = false;
        std::set<IntCell> cells;
        for (const auto& [v, c] : env_pos) cells.insert(c);
        while (cur >= 0) {
            for (const auto& [v, c] : arena[cur].placed) {
                if (full.count(v) || cells.count(c)) clash = true;
                full[v] = c;
                cells.insert(c);
            }
            cur = arena[cur].parent;
        }
        if (clash) continue;
        // Every part vertex placed?
        bool total = true;
        for (int v : part)
            if (!full.count(v)) total = false;
        if (!total) continue;
        // All induced edges realized?
        bool edges_ok = true;
        for (auto [u, v] : tree.edges) {
            if (!in_part[u] || !in_part[v]) continue;
            int dd = std::abs(full[u].first - full[v].first) +
                     std::abs(full[u].second - full[v].second);
            if (dd != 1) edges_ok = false;
        }
        if (!edges_ok) continue;
        Extents e;
        for (const auto& [v, c] : full) e.add(c);
        if (e.rows() > spec.k || e.cols() > spec.r) continue;
        GridEmbedding piece;
        piece.k = e.rows();
        piece.r = e.cols();
        for (const auto& [v, c] : full) piece.place(v, {c.first, c.second});
        out.variants.push_back(std::move(piece));
    }
    if (truncated) out.truncated = true;
    return out;
}

namespace {

// Connected vertex sets S with required <= S <= allowed, enumerated up to
// a count cap. `required` must itself induce a connected subgraph.
void connected_supersets(const Graph& g, const std::set<int>& required,
                         const std::set<int>& allowed, size_t cap,
                         std::vector<std::set<int>>& out, bool* truncated) {
    std::set<std::set<int>> seen;
    std::vector<std::set<int>> stack = {required};
    seen.insert(required);
    while (!stack.empty()) {
        std::set<int> cur = stack.back();
        stack.pop_back();
        out.push_back(cur);
        if (out.size() >= cap) {
            *truncated = true;
            return;
        }
        std::set<int> frontier;
        for (int v : cur)
            for (int w : g.adj[v])
                if (allowed.count(w) && !cur.count(w)) frontier.insert(w);
        for (int w : frontier) {
            std::set<int> nxt = cur;
            nxt.insert(w);
            if (seen.insert(nxt).second) stack.push_back(nxt);
        }
    }
}

// All embeddings of tree[U] into a win_rows x win_cols window with `pin`
// fixed at `center`, via backtracking. U must induce a connected subgraph.
std::vector<GridEmbedding> window_embeddings(const Graph& tree, const std::set<int>& U, int pin,
                                             Cell center, int win_rows, int win_cols,
                                             std::uint64_t budget, bool* truncated) {
    std::vector<GridEmbedding> out;
    std::vector<int> order;
    std::map<int, int> par;
    {
        std::queue<int> q;
        std::set<int> seen = {pin};
        q.push(pin);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            order.push_back(v);
            for (int w : tree.adj[v])
                if (U.count(w) && !seen.count(w)) {
                    seen.insert(w);
                    par[w] = v;
                    q.push(w);
                }
        }
        if (order.size() != U.size()) return out;  // disconnected: no embeddings emitted
    }
    std::map<int, Cell> pos;
    std::set<Cell> used;
    std::uint64_t nodes = 0;
    std::function<void(size_t)> rec = [&](size_t idx) {
        if (*truncated) return;
        if (++nodes > budget) {
            *truncated = true;
            return;
        }
        if (idx == order.size()) {
            GridEmbedding f;
            f.k = win_rows;
            f.r = win_cols;
            for (const auto& [v, c] : pos) f.place(v, c);
            out.push_back(std::move(f));
            return;
        }
        int u = order[idx];
        std::vector<Cell> cells;
        if (idx == 0) {
            cells = {center};
        } else {
            Cell b = pos.at(par.at(u));
            cells = {{b.row + 1, b.col}, {b.row - 1, b.col}, {b.row, b.col + 1}, {b.row, b.col - 1}};
        }
        for (Cell c : cells) {
            if (c.row < 1 || c.row > win_rows || c.col < 1 || c.col > win_cols) continue;
            if (used.count(c)) continue;
            bool ok = true;
            for (int w : tree.adj[u]) {
                auto it = pos.find(w);
                if (it != pos.end() &&
                    std::abs(it->second.row - c.row) + std::abs(it->second.col - c.col) != 1) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            pos[u] = c;
            used.insert(c);
            rec(idx + 1);
            used.erase(c);
            pos.erase(u);
            if (*truncated) return;
        }
    };
    rec(0);
    return out;
}

const Direction kAllDirections[4] = {Direction::up, Direction::left, Direction::down,
                                     Direction::right};

}  // namespace

TreeSolveResult solve_tree(const Graph& tree, int k, int r, std::uint64_t budget,
                           const TreeSolveConstants& constants) {
    if (!is_tree(tree)) throw GridbedError("solve_tree: input is not a tree");
    TreeSolveResult out;
    SolveResult& res = out.result;
    if (tree.n == 0) {
        res.answer = Answer::yes;
        res.achieved_a = 0;
        res.witness = GridEmbedding{k, r, {}};
        return out;
    }
    if (!grid_necessary_filter(tree).pass || tree.n > k * r) {
        res.answer = Answer::no;
        res.achieved_a = tree.n;
        return out;
    }

    bool saw_truncation = false;

    auto finish_yes = [&](GridEmbedding witness, int a, SplitClassification::Kind kind) {
        auto norm = normalized(witness);
        norm.k = std::max(norm.k, 1);
        norm.r = std::max(norm.r, 1);
        GridEmbedding final = norm;
        final.k = k;
        final.r = r;
        auto check = validate(tree, final);
        if (!check.ok) return false;
        res.answer = Answer::yes;
        res.witness = final;
        res.achieved_a = a;
        out.used_case = kind;
        return true;
    };

    for (int a = 0; a < tree.n; ++a) {
        int t = std::max(1, constants.c_split * a * a);
        auto cls = classify_splits(tree, t);
        int wrong_budget_branch = constants.c_bud * a;
        int retained = std::max(1, constants.c_ret * a);

        if (cls.kind == SplitClassification::Kind::too_many) continue;

        if (cls.kind == SplitClassification::Kind::no_split) {
            auto pt = find_pt_path(tree, t);
            if (!pt) continue;
            std::vector<int> all(tree.n);
            for (int v = 0; v < tree.n; ++v) all[v] = v;
            for (Direction vert : {Direction::up, Direction::down}) {
                for (Direction horz : {Direction::left, Direction::right}) {
                    SweepSpec spec;
                    spec.allowed = {vert, horz};
                    spec.wrong_budget = a + 1;
                    spec.k = k;
                    spec.r = r;
                    spec.retained_groups = retained;
                    spec.budget = budget;
                    auto sw = directional_sweep_embed(tree, all, *pt, spec, constants.variant_cap);
                    if (sw.truncated) saw_truncation = true;
                    for (const auto& var : sw.variants)
                        if (finish_yes(var, a, cls.kind)) return out;
                }
            }
            continue;
        }

        // Split cases: environment enumeration around the split vertex (or the
        // pair, for two one-splits), branch sweeps in distinct directions,
        // then composition through the embedding algebra.
        int env_radius = constants.c_env * a * a + 1;
        int win = constants.c_win * a * a + 1;

        std::vector<int> centers = cls.split_vertices;
        std::set<int> center_set(centers.begin(), centers.end());

        // Components of tree minus the centers; branches are the large ones.
        std::vector<std::vector<int>> comps;
        {
            std::vector<int> seen(tree.n, 0);
            for (int c : centers) seen[c] = 1;
            for (int s0 = 0; s0 < tree.n; ++s0) {
                if (seen[s0]) continue;
                std::vector<int> comp;
                std::queue<int> q;
                q.push(s0);
                seen[s0] = 1;
                while (!q.empty()) {
                    int v = q.front();
                    q.pop();
                    comp.push_back(v);
                    for (int w : tree.adj[v])
                        if (!seen[w]) {
                            seen[w] = 1;
                            q.push(w);
                        }
                }
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
        }
        std::vector<std::vector<int>> branches;
        std::set<int> small_vertices;
        for (auto& comp : comps) {
            bool large = static_cast<int>(comp.size()) >= t;
            // The connector between two one-split vertices stays with the
            // environment, not the branches.
            bool connector = false;
            if (centers.size() == 2) {
                int touches = 0;
                for (int c : centers) {
                    bool adj = false;
                    for (int v : comp)
                        if (tree.has_edge(c, v)) adj = true;
                    if (adj) ++touches;
                }
                connector = touches == 2;
            }
            if (large && !connector)
                branches.push_back(comp);
            else
                for (int v : comp) small_vertices.insert(v);
        }
        if (branches.size() > 4) continue;

        // Environment: a connected superset of the centers, the connector and
        // the small components, inside the radius-bounded ball.
        std::set<int> required(small_vertices.begin(), small_vertices.end());
        for (int c : centers) required.insert(c);
        if (centers.size() == 2) {
            // Path between the two one-split vertices.
            auto dist = distances_from(tree, centers[0]);
            int cur = centers[1];
            while (cur != centers[0]) {
                required.insert(cur);
                for (int w : tree.adj[cur])
                    if (dist[w] == dist[cur] - 1) {
                        cur = w;
                        break;
                    }
            }
            required.insert(centers[0]);
        }
        std::set<int> allowed;
        for (int c : centers) {
            auto dist = distances_from(tree, c);
            for (int v = 0; v < tree.n; ++v)
                if (dist[v] <= env_radius) allowed.insert(v);
        }
        bool ball_ok = true;
        for (int v : required)
            if (!allowed.count(v)) ball_ok = false;
        if (!ball_ok) {
            saw_truncation = true;  // paper constants would make the ball large enough
            continue;
        }

        std::vector<std::set<int>> env_sets;
        bool env_trunc = false;
        connected_supersets(tree, required, allowed, 4096, env_sets, &env_trunc);
        if (env_trunc) saw_truncation = true;

        int win_rows = win;
        int win_cols = win + (centers.size() == 2 ? tree.n : 0);
        Cell center_cell{(win + 1) / 2, (win + 1) / 2};

        for (const auto& U : env_sets) {
            bool wtrunc = false;
            auto envs = window_embeddings(tree, U, centers[0], center_cell, win_rows, win_cols,
                                          budget, &wtrunc);
            if (wtrunc) saw_truncation = true;
            for (const auto& envf : envs) {
                // Per-branch (P,t)-paths, both orientations.
                struct BranchInfo {
                    std::vector<int> part;
                    PtPath pt;
                };
                std::vector<BranchInfo> binfo;
                bool branch_fail = false;
                for (const auto& br : branches) {
                    Graph sub = tree.induced(br);
                    auto pt_local = find_pt_path(sub, t);
                    if (!pt_local) {
                        branch_fail = true;
                        break;
                    }
                    BranchInfo bi;
                    bi.part = br;
                    for (int v : U) bi.part.push_back(v);
                    std::sort(bi.part.begin(), bi.part.end());
                    bi.part.erase(std::unique(bi.part.begin(), bi.part.end()), bi.part.end());
                    bi.pt.radius = pt_local->radius;
                    bi.pt.pc.assign(tree.n, -1);
                    for (int idx : pt_local->path) bi.pt.path.push_back(br[idx]);
                    for (size_t li = 0; li < br.size(); ++li)
                        bi.pt.pc[br[li]] = br[pt_local->pc[li]];
                    binfo.push_back(std::move(bi));
                }
                if (branch_fail) continue;

                // Direction assignments: distinct directions per branch.
                std::vector<int> dir_idx(branches.size());
                std::vector<std::vector<GridEmbedding>> variants(branches.size());
                std::function<bool(size_t, int)> assign = [&](size_t bi, int used_mask) -> bool {
                    if (bi == branches.size()) {
                        // Sweep every branch under its direction; compose.
                        std::vector<std::vector<GridEmbedding>> vs(branches.size());
                        for (size_t b = 0; b < branches.size(); ++b) {
                            PtPath oriented = binfo[b].pt;
                            SweepSpec spec;
                            spec.allowed = {kAllDirections[dir_idx[b]]};
                            spec.wrong_budget = wrong_budget_branch;
                            spec.environment = envf;
                            spec.win_rows = win_rows;
                            spec.win_cols = win_cols;
                            spec.k = k;
                            spec.r = r;
                            spec.retained_groups = retained;
                            spec.budget = budget;
                            SweepResult sw;
                            for (int orient = 0; orient < 2; ++orient) {
                                PtPath pp = oriented;
                                if (orient == 1) {
                                    std::reverse(pp.path.begin(), pp.path.end());
                                    if (pp.path.size() <= 1) break;
                                }
                                auto part_sw = directional_sweep_embed(tree, binfo[b].part, pp,
                                                                       spec, constants.variant_cap);
                                if (part_sw.truncated) saw_truncation = true;
                                for (auto& v : part_sw.variants) sw.variants.push_back(std::move(v));
                            }
                            if (sw.variants.empty()) return false;
                            vs[b] = std::move(sw.variants);
                        }
                        // Compose: pieces share exactly U.
                        std::set<int> shared(U.begin(), U.end());
                        GridEmbedding env_piece = envf;
                        std::vector<size_t> pick(branches.size(), 0);
                        std::function<bool(size_t)> combine = [&](size_t b) -> bool {
                            if (b == branches.size()) {
                                const GridEmbedding* f1 = &vs[0][pick[0]];
                                const GridEmbedding* f2 = branches.size() > 1 ? &vs[1][pick[1]] : &env_piece;
                                const GridEmbedding* f3 = branches.size() > 2 ? &vs[2][pick[2]] : &env_piece;
                                const GridEmbedding* f4 = branches.size() > 3 ? &vs[3][pick[3]] : &env_piece;
                                try {
                                    GridEmbedding glued = glue(*f1, *f2, *f3, *f4, shared);
                                    if (glued.k <= k && glued.r <= r)
                                        if (finish_yes(glued, a, cls.kind)) return true;
                                } catch (const GridbedError&) {
                                }
                                return false;
                            }
                            for (pick[b] = 0; pick[b] < vs[b].size(); ++pick[b])
                                if (combine(b + 1)) return true;
                            return false;
                        };
                        return combine(0);
                    }
                    for (int d = 0; d < 4; ++d) {
                        if (used_mask & (1 << d)) continue;
                        dir_idx[bi] = d;
                        if (assign(bi + 1, used_mask | (1 << d))) return true;
                    }
                    return false;
                };
                if (assign(0, 0)) return out;
            }
        }
    }

    res.answer = saw_truncation ? Answer::unknown : Answer::no;
    res.achieved_a = tree.n;
    return out;
}

}  // namespace gridbed
