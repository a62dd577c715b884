#include "test_support.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace gridbed::testsupport {

namespace {

struct UnprunedSearcher {
    const Graph& g;
    int k, r;
    std::uint64_t budget, nodes = 0;
    bool out_of_budget = false;
    const std::function<bool(const GridEmbedding&)>& visit;
    std::vector<int> cell_of, vert_at;
    bool stop = false;

    UnprunedSearcher(const Graph& g_, int k_, int r_, std::uint64_t budget_,
                     const std::function<bool(const GridEmbedding&)>& visit_)
        : g(g_), k(k_), r(r_), budget(budget_), visit(visit_) {
        cell_of.assign(g.n, -1);
        vert_at.assign(k * r, -1);
    }

    void rec(int v) {
        if (stop || out_of_budget) return;
        if (v == g.n) {
            GridEmbedding f;
            f.k = k;
            f.r = r;
            for (int u = 0; u < g.n; ++u) f.place(u, {cell_of[u] / r + 1, cell_of[u] % r + 1});
            if (!visit(f)) stop = true;
            return;
        }
        for (int cell = 0; cell < k * r; ++cell) {
            if (vert_at[cell] >= 0) continue;
            if (++nodes > budget) {
                out_of_budget = true;
                return;
            }
            bool ok = true;
            for (int w : g.adj[v]) {
                if (cell_of[w] < 0) continue;
                int dr = std::abs(cell / r - cell_of[w] / r);
                int dc = std::abs(cell % r - cell_of[w] % r);
                if (dr + dc != 1) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            cell_of[v] = cell;
            vert_at[cell] = v;
            rec(v + 1);
            vert_at[cell] = -1;
            cell_of[v] = -1;
            if (stop || out_of_budget) return;
        }
    }
};

}  // namespace

std::optional<bool> unpruned_embeddable(const Graph& g, int k, int r, std::uint64_t budget) {
    if (g.n > k * r) return false;
    bool found = false;
    std::function<bool(const GridEmbedding&)> visit = [&](const GridEmbedding&) {
        found = true;
        return false;
    };
    UnprunedSearcher s(g, k, r, budget, visit);
    s.rec(0);
    if (found) return true;
    if (s.out_of_budget) return std::nullopt;
    return false;
}

bool unpruned_enumerate(const Graph& g, int k, int r, std::uint64_t budget,
                        const std::function<bool(const GridEmbedding&)>& visit) {
    if (g.n > k * r) return true;
    UnprunedSearcher s(g, k, r, budget, visit);
    s.rec(0);
    return !s.out_of_budget;
}

std::vector<std::vector<int>> union_find_components(const Graph& g) {
    std::vector<int> parent(g.n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [u, v] : g.edges) parent[find(u)] = find(v);
    std::map<int, std::vector<int>> by_root;
    for (int v = 0; v < g.n; ++v) by_root[find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [root, comp] : by_root) {
        std::sort(comp.begin(), comp.end());
        out.push_back(comp);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
    const int inf = 1 << 28;
    std::vector<std::vector<int>> d(g.n, std::vector<int>(g.n, inf));
    for (int v = 0; v < g.n; ++v) d[v][v] = 0;
    for (auto [u, v] : g.edges) d[u][v] = d[v][u] = 1;
    for (int m = 0; m < g.n; ++m)
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                d[i][j] = std::min(d[i][j], d[i][m] + d[m][j]);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (d[i][j] >= inf) d[i][j] = -1;
    return d;
}

bool isomorphic_by_permutations(const Graph& g1, const Graph& g2) {
    if (g1.n != g2.n || g1.edge_count() != g2.edge_count()) return false;
    std::vector<int> perm(g1.n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (auto [u, v] : g1.edges)
            if (!g2.has_edge(perm[u], perm[v])) {
                ok = false;
                break;
            }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

std::vector<std::uint8_t> canonical_form(const Graph& g) {
    std::vector<int> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::uint8_t> best;
    do {
        std::vector<std::uint8_t> bits;
        for (int i = 0; i < g.n; ++i)
            for (int j = i + 1; j < g.n; ++j)
                bits.push_back(g.has_edge(perm[i], perm[j]) ? 1 : 0);
        if (best.empty() || bits < best) best = std::move(bits);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<Graph> connected_graphs(int n, int max_deg) {
    std::vector<Graph> out;
    if (n == 1) {
        out.push_back(Graph::make(1, {}));
        return out;
    }
    std::vector<std::pair<int, int>> all_pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) all_pairs.emplace_back(i, j);
    std::set<std::vector<std::uint8_t>> seen;
    for (std::uint32_t mask = 0; mask < (1u << all_pairs.size()); ++mask) {
        std::vector<std::pair<int, int>> edges;
        for (size_t e = 0; e < all_pairs.size(); ++e)
            if (mask >> e & 1) edges.push_back(all_pairs[e]);
        if (static_cast<int>(edges.size()) < n - 1) continue;
        Graph g = Graph::make(n, edges);
        if (g.max_degree() > max_deg) continue;
        if (!is_connected(g)) continue;
        auto canon = canonical_form(g);
        if (seen.insert(canon).second) out.push_back(std::move(g));
    }
    return out;
}

long long matrix_tree_count(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n <= 1) return 1;
    // Integer determinant of the reduced Laplacian by fraction-free
    // Gaussian elimination (Bareiss).
    std::vector<std::vector<long long>> lap(n, std::vector<long long>(n, 0));
    for (auto [u, v] : edges) {
        if (u == v) continue;
        lap[u][u] += 1;
        lap[v][v] += 1;
        lap[u][v] -= 1;
        lap[v][u] -= 1;
    }
    int m = n - 1;
    std::vector<std::vector<long long>> a(m, std::vector<long long>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a[i][j] = lap[i][j];
    long long prev = 1;
    int sign = 1;
    for (int col = 0; col < m; ++col) {
        int pivot = -1;
        for (int row = col; row < m; ++row)
            if (a[row][col] != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            sign = -sign;
        }
        for (int row = col + 1; row < m; ++row) {
            for (int j = col + 1; j < m; ++j)
                a[row][j] = (a[row][j] * a[col][col] - a[row][col] * a[col][j]) / prev;
            a[row][col] = 0;
        }
        prev = a[col][col];
    }
    return sign * a[m - 1][m - 1];
}

Graph random_tree(Rng& rng, int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(rng.below(v), v);
    return Graph::make(n, std::move(edges));
}

Graph random_caterpillar_forest(Rng& rng, int components, int max_spine, int max_leaves) {
    Graph g = Graph::make(0, {});
    for (int c = 0; c < components; ++c) {
        int spine = 1 + rng.below(max_spine);
        std::vector<std::pair<int, int>> edges;
        int n = spine;
        for (int i = 0; i + 1 < spine; ++i) edges.emplace_back(i, i + 1);
        for (int i = 0; i < spine; ++i) {
            int leaves = rng.below(max_leaves + 1);
            for (int l = 0; l < leaves; ++l) {
                edges.emplace_back(i, n);
                ++n;
            }
        }
        g = disjoint_union(g, Graph::make(n, std::move(edges)));
    }
    return g;
}

bool direct_strip_pack(const std::vector<std::pair<int, int>>& rects, int k, int w) {
    long long area = 0;
    for (auto [h, ww] : rects) area += static_cast<long long>(h) * ww;
    if (area > static_cast<long long>(k) * w) return false;
    // Rectangles need not fill the strip: pad with 1x1 free space by allowing
    // the first-free-cell rule to skip cells. Implemented by trying every
    // subset of cells is wasteful; instead place rectangles anywhere.
    std::function<bool(std::vector<std::vector<bool>>&, size_t,
                       const std::vector<std::pair<int, int>>&)>
        anywhere = [&](std::vector<std::vector<bool>>& grid, size_t idx,
                       const std::vector<std::pair<int, int>>& rs) -> bool {
        if (idx == rs.size()) return true;
        auto [h, ww] = rs[idx];
        for (int rot = 0; rot < 2; ++rot) {
            int hh = rot ? ww : h, www = rot ? h : ww;
            if (rot == 1 && hh == www) continue;
            for (int i = 0; i + hh <= k; ++i)
                for (int j = 0; j + www <= w; ++j) {
                    bool free_area = true;
                    for (int x = i; x < i + hh && free_area; ++x)
                        for (int y = j; y < j + www; ++y)
                            if (grid[x][y]) {
                                free_area = false;
                                break;
                            }
                    if (!free_area) continue;
                    for (int x = i; x < i + hh; ++x)
                        for (int y = j; y < j + www; ++y) grid[x][y] = true;
                    if (anywhere(grid, idx + 1, rs)) return true;
                    for (int x = i; x < i + hh; ++x)
                        for (int y = j; y < j + www; ++y) grid[x][y] = false;
                }
        }
        return false;
    };
    std::vector<std::vector<bool>> grid(k, std::vector<bool>(w, false));
    std::vector<std::pair<int, int>> sorted = rects;
    std::sort(sorted.begin(), sorted.end(), [](auto a, auto b) {
        return a.first * a.second > b.first * b.second;
    });
    return anywhere(grid, 0, sorted);
}

bool sat_brute_force(int num_vars, const std::vector<std::vector<int>>& clauses) {
    for (std::uint32_t mask = 0; mask < (1u << num_vars); ++mask) {
        bool ok = true;
        for (const auto& clause : clauses) {
            bool sat = false;
            for (int lit : clause) {
                bool val = lit > 0 ? (mask >> (lit - 1) & 1) : !(mask >> (-lit - 1) & 1);
                if (val) sat = true;
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

std::optional<std::vector<bool>> nae_assignment(int num_vars,
                                                const std::vector<std::vector<int>>& clauses) {
    for (std::uint32_t mask = 0; mask < (1u << num_vars); ++mask) {
        bool ok = true;
        for (const auto& clause : clauses) {
            bool has_true = false, has_false = false;
            for (int lit : clause) {
                bool val = lit > 0 ? (mask >> (lit - 1) & 1) : !(mask >> (-lit - 1) & 1);
                (val ? has_true : has_false) = true;
            }
            if (!has_true || !has_false) {
                ok = false;
                break;
            }
        }
        if (ok) {
            std::vector<bool> alpha(num_vars);
            for (int i = 0; i < num_vars; ++i) alpha[i] = mask >> i & 1;
            return alpha;
        }
    }
    return std::nullopt;
}

}  // namespace gridbed::testsupport
