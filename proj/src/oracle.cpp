#include "gridbed/oracle.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace gridbed {

namespace {

struct SearchPlan {
    // Vertices in placement order; component boundaries and per-component
    // catalog class for the same-class root ordering rule.
    std::vector<int> order;
    std::vector<int> comp_start;          // indices into order where a component begins
    std::vector<int> comp_class;          // catalog class per component (same length)
    std::vector<int> order_index;         // vertex -> position in order
};

SearchPlan make_plan(const Graph& g) {
    SearchPlan plan;
    ComponentCatalog cat = component_catalog(g);
    // Components grouped by class so identical components are consecutive.
    struct CompRef {
        int cls;
        std::vector<int> vertices;
    };
    std::vector<CompRef> comps;
    for (size_t c = 0; c < cat.classes.size(); ++c)
        for (const auto& copy : cat.classes[c].copies) {
            std::vector<int> vs = copy;
            std::sort(vs.begin(), vs.end());
            comps.push_back({static_cast<int>(c), std::move(vs)});
        }
    std::sort(comps.begin(), comps.end(), [](const CompRef& a, const CompRef& b) {
        if (a.cls != b.cls) return a.cls < b.cls;
        return a.vertices < b.vertices;
    });
    plan.order_index.assign(g.n, -1);
    for (const auto& comp : comps) {
        plan.comp_start.push_back(static_cast<int>(plan.order.size()));
        plan.comp_class.push_back(comp.cls);
        // BFS from a maximum-degree vertex (smallest id on ties).
        int root = comp.vertices[0];
        for (int v : comp.vertices)
            if (g.degree(v) > g.degree(root)) root = v;
        std::vector<int> seen(g.n, 0);
        std::queue<int> q;
        q.push(root);
        seen[root] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            plan.order_index[v] = static_cast<int>(plan.order.size());
            plan.order.push_back(v);
            for (int w : g.adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
        }
    }
    return plan;
}

struct Searcher {
    const Graph& g;
    int k, r;
    std::uint64_t budget;
    const std::function<bool(const GridEmbedding&)>& visit;
    SearchPlan plan;

    std::vector<int> cell_of;   // vertex -> cell index (row-major, -1 unplaced)
    std::vector<int> vert_at;   // cell -> vertex or -1
    std::uint64_t nodes = 0;
    bool budget_hit = false;
    bool stop = false;

    Searcher(const Graph& g_, int k_, int r_, std::uint64_t budget_,
             const std::function<bool(const GridEmbedding&)>& visit_)
        : g(g_), k(k_), r(r_), budget(budget_), visit(visit_), plan(make_plan(g_)) {
        cell_of.assign(g.n, -1);
        vert_at.assign(k * r, -1);
    }

    int row_of(int cell) const { return cell / r; }
    int col_of(int cell) const { return cell % r; }

    bool cells_adjacent(int a, int b) const {
        int dr = std::abs(row_of(a) - row_of(b));
        int dc = std::abs(col_of(a) - col_of(b));
        return dr + dc == 1;
    }

    int free_neighbor_cells(int cell) const {
        int cnt = 0;
        int row = row_of(cell), col = col_of(cell);
        if (row > 0 && vert_at[cell - r] < 0) ++cnt;
        if (row + 1 < k && vert_at[cell + r] < 0) ++cnt;
        if (col > 0 && vert_at[cell - 1] < 0) ++cnt;
        if (col + 1 < r && vert_at[cell + 1] < 0) ++cnt;
        return cnt;
    }

    bool feasible_at(int v, int cell) {
        int unplaced = 0;
        for (int w : g.adj[v]) {
            if (cell_of[w] >= 0) {
                if (!cells_adjacent(cell, cell_of[w])) return false;
            } else {
                ++unplaced;
            }
        }
        return free_neighbor_cells(cell) >= unplaced;
    }

    bool component_index_of(int pos, int* comp) const {
        for (size_t c = 0; c < plan.comp_start.size(); ++c) {
            int lo = plan.comp_start[c];
            int hi = (c + 1 < plan.comp_start.size()) ? plan.comp_start[c + 1]
                                                      : static_cast<int>(plan.order.size());
            if (pos >= lo && pos < hi) {
                *comp = static_cast<int>(c);
                return pos == lo;
            }
        }
        *comp = -1;
        return false;
    }

    void search(int pos, const std::vector<int>& comp_root_cell) {
        if (stop || budget_hit) return;
        if (pos == g.n) {
            GridEmbedding f;
            f.k = k;
            f.r = r;
            for (int v = 0; v < g.n; ++v) f.place(v, {cell_of[v] / r + 1, cell_of[v] % r + 1});
            if (!visit(f)) stop = true;
            return;
        }
        int v = plan.order[pos];
        int comp = -1;
        bool is_root = component_index_of(pos, &comp);

        std::vector<int> candidates;
        if (pos == 0) {
            // Symmetry quotient: the very first vertex goes to the upper-left
            // quadrant, above the diagonal when the board is square.
            for (int row = 0; row < (k + 1) / 2; ++row)
                for (int col = 0; col < (r + 1) / 2; ++col) {
                    if (k == r && row > col) continue;
                    candidates.push_back(row * r + col);
                }
        } else if (is_root) {
            // New component root: any free cell, but roots of isomorphic
            // components must come in increasing row-major order.
            int lo = 0;
            if (comp > 0 && plan.comp_class[comp] == plan.comp_class[comp - 1])
                lo = comp_root_cell[comp - 1] + 1;
            for (int cell = lo; cell < k * r; ++cell)
                if (vert_at[cell] < 0) candidates.push_back(cell);
        } else {
            // Some earlier vertex of this component is adjacent to v (BFS
            // order); trying only cells next to placed neighbors is complete.
            int anchor = -1;
            for (int w : g.adj[v])
                if (cell_of[w] >= 0) {
                    anchor = cell_of[w];
                    break;
                }
            if (anchor < 0) {
                // Isolated vertex inside a component of size 1 handled by the
                // root branch; this should not happen, fall back to all cells.
                for (int cell = 0; cell < k * r; ++cell)
                    if (vert_at[cell] < 0) candidates.push_back(cell);
            } else {
                int row = row_of(anchor), col = col_of(anchor);
                if (row > 0 && vert_at[anchor - r] < 0) candidates.push_back(anchor - r);
                if (col > 0 && vert_at[anchor - 1] < 0) candidates.push_back(anchor - 1);
                if (col + 1 < r && vert_at[anchor + 1] < 0) candidates.push_back(anchor + 1);
                if (row + 1 < k && vert_at[anchor + r] < 0) candidates.push_back(anchor + r);
            }
        }

        for (int cell : candidates) {
            if (stop || budget_hit) return;
            if (++nodes > budget) {
                budget_hit = true;
                return;
            }
            if (vert_at[cell] >= 0) continue;
            if (!feasible_at(v, cell)) continue;
            cell_of[v] = cell;
            vert_at[cell] = v;
            if (is_root) {
                std::vector<int> roots = comp_root_cell;
                roots[comp] = cell;
                search(pos + 1, roots);
            } else {
                search(pos + 1, comp_root_cell);
            }
            vert_at[cell] = -1;
            cell_of[v] = -1;
        }
    }

    bool run() {
        std::vector<int> roots(plan.comp_start.size(), -1);
        if (g.n == 0) {
            GridEmbedding f;
            f.k = k;
            f.r = r;
            visit(f);
            return true;
        }
        search(0, roots);
        return !budget_hit;
    }
};

}  // namespace

bool enumerate_embeddings(const Graph& g, int k, int r, std::uint64_t budget,
                          const std::function<bool(const GridEmbedding&)>& visit) {
    if (k < 1 || r < 1) throw GridbedError("enumerate_embeddings: k, r must be >= 1");
    if (g.n > k * r) return true;  // nothing to enumerate
    Searcher s(g, k, r, budget, visit);
    return s.run();
}

SolveResult brute_force_embed(const Graph& g, int k, int r, std::uint64_t budget) {
    if (k < 1 || r < 1) throw GridbedError("brute_force_embed: k, r must be >= 1");
    SolveResult res;
    if (g.n > k * r) {
        res.answer = Answer::no;
        return res;
    }
    std::optional<GridEmbedding> found;
    Searcher s(g, k, r, budget, [&](const GridEmbedding& f) {
        found = f;
        return false;  // stop at the first witness
    });
    bool complete = s.run();
    res.stats.nodes = s.nodes;
    if (found) {
        res.answer = Answer::yes;
        res.witness = std::move(found);
    } else {
        res.answer = complete ? Answer::no : Answer::unknown;
    }
    return res;
}

SolveResult embed_components_diagonally(const Graph& g, std::uint64_t budget) {
    SolveResult res;
    res.stats.nodes = 0;
    GridEmbedding combined;
    combined.k = std::max(1, g.n);
    combined.r = std::max(1, g.n);
    int offset = 0;
    for (const auto& comp : connected_components(g)) {
        Graph sub = g.induced(comp);
        int s = sub.n;
        SolveResult part = brute_force_embed(sub, s, s, budget);
        res.stats.nodes += part.stats.nodes;
        if (part.answer == Answer::unknown) {
            res.answer = Answer::unknown;
            return res;
        }
        if (part.answer == Answer::no) {
            res.answer = Answer::no;
            return res;
        }
        for (const auto& [local, c] : part.witness->pos)
            combined.place(comp[local], {c.row + offset, c.col + offset});
        offset += s;
    }
    res.answer = Answer::yes;
    res.witness = std::move(combined);
    return res;
}

namespace {

struct CaterpillarShape {
    // Row layout: the spine plus absorbed end leaves on one row, remaining
    // leaves above (first) and below (second).
    std::vector<int> row;
    std::vector<std::vector<int>> leaves;  // per row position
    int width = 0;
    int height = 1;
};

// The classical spine: vertices of degree >= 2 (a path in any caterpillar).
// End leaves can be absorbed into the spine row; leaves on a spine vertex
// beyond two force absorption or make the component unembeddable.
std::optional<std::vector<CaterpillarShape>> caterpillar_layouts(const Graph& g,
                                                                 const std::vector<int>& comp,
                                                                 bool* is_caterpillar) {
    *is_caterpillar = true;
    Graph sub = g.induced(comp);
    if (!is_tree(sub)) {
        *is_caterpillar = false;
        return std::nullopt;
    }
    std::vector<CaterpillarShape> layouts;
    if (sub.n <= 2) {
        CaterpillarShape shape;
        for (size_t i = 0; i < comp.size(); ++i) shape.row.push_back(comp[i]);
        shape.leaves.assign(shape.row.size(), {});
        shape.width = static_cast<int>(shape.row.size());
        shape.height = 1;
        layouts.push_back(std::move(shape));
        return layouts;
    }
    std::vector<int> core;
    for (int v = 0; v < sub.n; ++v)
        if (sub.degree(v) >= 2) core.push_back(v);
    // The core must induce a path; otherwise not a caterpillar.
    Graph core_graph = sub.induced(core);
    if (!is_tree(core_graph) || core_graph.max_degree() > 2) {
        *is_caterpillar = false;
        return std::nullopt;
    }
    // Order the core end to end.
    std::vector<int> order;
    {
        int start = 0;
        for (size_t i = 0; i < core.size(); ++i)
            if (core_graph.degree(static_cast<int>(i)) <= 1) start = static_cast<int>(i);
        std::vector<int> prev(core.size(), -1);
        int cur = start, before = -1;
        while (true) {
            order.push_back(cur);
            int nxt = -1;
            for (int w : core_graph.adj[cur])
                if (w != before) nxt = w;
            if (nxt < 0) break;
            before = cur;
            cur = nxt;
        }
        if (order.size() != core.size()) {
            *is_caterpillar = false;
            return std::nullopt;
        }
    }
    // Leaves per core position.
    std::vector<std::vector<int>> leaves(core.size());
    std::vector<int> core_pos(sub.n, -1);
    for (size_t i = 0; i < order.size(); ++i) core_pos[core[order[i]]] = static_cast<int>(i);
    for (int v = 0; v < sub.n; ++v) {
        if (core_pos[v] >= 0) continue;
        if (sub.degree(v) != 1) {
            *is_caterpillar = false;
            return std::nullopt;
        }
        int parent = sub.adj[v][0];
        if (core_pos[parent] < 0) {
            *is_caterpillar = false;
            return std::nullopt;
        }
        leaves[core_pos[parent]].push_back(v);
    }
    for (auto& ls : leaves) std::sort(ls.begin(), ls.end());
    for (size_t i = 1; i + 1 < leaves.size(); ++i)
        if (leaves[i].size() > 2) return layouts;  // caterpillar, but unembeddable

    // Absorb 0 or 1 end leaf per side into the row (for a single-vertex core,
    // the two sides are independent).
    int left_max = leaves.front().empty() ? 0 : 1;
    int right_end = static_cast<int>(leaves.size()) - 1;
    for (int absorb_left = 0; absorb_left <= left_max; ++absorb_left) {
        int remaining_right =
            static_cast<int>(leaves[right_end].size()) - (right_end == 0 ? absorb_left : 0);
        int right_max = remaining_right > 0 ? 1 : 0;
        for (int absorb_right = 0; absorb_right <= right_max; ++absorb_right) {
            // Remaining leaves per position after absorption.
            std::vector<std::vector<int>> rem = leaves;
            std::vector<int> absorbed_left_ids, absorbed_right_ids;
            if (absorb_left) {
                absorbed_left_ids.push_back(rem.front().front());
                rem.front().erase(rem.front().begin());
            }
            if (absorb_right) {
                absorbed_right_ids.push_back(rem[right_end].front());
                rem[right_end].erase(rem[right_end].begin());
            }
            bool ok = true;
            int max_rem = 0;
            bool any_rem = false;
            for (const auto& ls : rem) {
                max_rem = std::max(max_rem, static_cast<int>(ls.size()));
                any_rem = any_rem || !ls.empty();
            }
            if (max_rem > 2) ok = false;
            if (!ok) continue;
            CaterpillarShape shape;
            for (int id : absorbed_left_ids) shape.row.push_back(comp[id]);
            for (int idx : order) shape.row.push_back(comp[core[idx]]);
            for (int id : absorbed_right_ids) shape.row.push_back(comp[id]);
            shape.leaves.assign(shape.row.size(), {});
            for (size_t i = 0; i < rem.size(); ++i)
                for (int id : rem[i])
                    shape.leaves[i + absorbed_left_ids.size()].push_back(comp[id]);
            shape.width = static_cast<int>(shape.row.size());
            shape.height = !any_rem ? 1 : (max_rem == 1 ? 2 : 3);
            layouts.push_back(std::move(shape));
        }
    }
    return layouts;
}

}  // namespace

std::optional<SolveResult> embed_caterpillar_forest(const Graph& g, int k, int r) {
    if (k < 1 || r < 1) throw GridbedError("embed_caterpillar_forest: k, r must be >= 1");
    std::vector<CaterpillarShape> chosen;
    for (const auto& comp : connected_components(g)) {
        bool is_cat = true;
        auto layouts = caterpillar_layouts(g, comp, &is_cat);
        if (!is_cat) return std::nullopt;  // not a caterpillar forest: not applicable
        const CaterpillarShape* best = nullptr;
        if (layouts)
            for (const auto& shape : *layouts)
                if (shape.height <= k && (!best || shape.width < best->width)) best = &shape;
        if (!best) {
            SolveResult res;
            res.answer = Answer::no;
            return res;
        }
        chosen.push_back(*best);
    }
    int width = 0;
    for (size_t i = 0; i < chosen.size(); ++i) {
        width += chosen[i].width;
        if (i > 0) width += 1;  // gap column
    }
    SolveResult res;
    if (width > r) {
        res.answer = Answer::no;
        return res;
    }
    GridEmbedding f;
    f.k = k;
    f.r = r;
    int col = 1;
    for (const auto& shape : chosen) {
        int spine_row = shape.height == 1 ? 1 : 2;
        for (size_t i = 0; i < shape.row.size(); ++i) {
            f.place(shape.row[i], {spine_row, col});
            const auto& ls = shape.leaves[i];
            if (ls.size() >= 1) f.place(ls[0], {spine_row - 1, col});
            if (ls.size() >= 2) f.place(ls[1], {spine_row + 1, col});
            ++col;
        }
        ++col;  // gap
    }
    res.answer = Answer::yes;
    res.witness = std::move(f);
    return res;
}

MinAResult min_distance_approximation(const Graph& g, int k, int r, std::uint64_t budget) {
    if (!is_connected(g)) throw GridbedError("min_distance_approximation: graph not connected");
    MinAResult out;
    if (g.n == 0) {
        out.status = Answer::yes;
        out.value = 0;
        return out;
    }
    if (g.n > k * r) {
        out.status = Answer::yes;
        out.value = g.n;
        return out;
    }
    auto dist = all_pairs_distances(g);
    int best = std::numeric_limits<int>::max();
    bool complete = enumerate_embeddings(g, k, r, budget, [&](const GridEmbedding& f) {
        int worst = 0;
        for (int u = 0; u < g.n; ++u)
            for (int v = u + 1; v < g.n; ++v)
                worst = std::max(worst, dist[u][v] - grid_distance(f, u, v));
        best = std::min(best, worst);
        return best > 0;  // a_f = 0 cannot be improved
    });
    if (!complete && best > 0) {
        out.status = Answer::unknown;
        return out;
    }
    out.status = Answer::yes;
    out.value = best == std::numeric_limits<int>::max() ? g.n : best;
    return out;
}

}  // namespace gridbed
