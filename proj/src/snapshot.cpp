#include "gridbed/snapshot.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace gridbed {

BlockPlan block_plan(int r, int mcc) {
    if (mcc < 2 || r < 2) throw GridbedError("block_plan: requires mcc >= 2 and r >= 2");
    BlockPlan plan;
    plan.p = (r - 1 + mcc - 2) / (mcc - 1);  // ceil((r-1)/(mcc-1))
    plan.widths.assign(plan.p, mcc);
    plan.widths[plan.p - 1] = r - (plan.p - 1) * (mcc - 1);
    return plan;
}

namespace {

// A positioned connected piece of a lattice: cell list plus edges, used both
// for snapshot components and for glued junction components.
struct Piece {
    std::vector<int> cells;                  // sorted cell indices
    std::vector<std::pair<int, int>> edges;  // sorted, a < b
};

Graph piece_graph(const Piece& piece) {
    std::map<int, int> idx;
    for (size_t i = 0; i < piece.cells.size(); ++i) idx[piece.cells[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> es;
    for (auto [a, b] : piece.edges) es.emplace_back(idx.at(a), idx.at(b));
    return Graph::make(static_cast<int>(piece.cells.size()), std::move(es));
}

// Shape-keyed cache for "which catalog class is this piece isomorphic to".
struct ClassLookup {
    const ComponentCatalog& catalog;
    int width;  // lattice width used to normalize shapes
    std::map<std::vector<int>, int> cache;

    explicit ClassLookup(const ComponentCatalog& cat, int w) : catalog(cat), width(w) {}

    // -1 when not isomorphic to any class.
    int class_of(const Piece& piece) {
        std::vector<int> key;
        int min_row = 1 << 28, min_col = 1 << 28;
        for (int c : piece.cells) {
            min_row = std::min(min_row, c / width);
            min_col = std::min(min_col, c % width);
        }
        for (int c : piece.cells) key.push_back((c / width - min_row) * 64 + (c % width - min_col));
        key.push_back(-1);
        for (auto [a, b] : piece.edges) {
            key.push_back((a / width - min_row) * 64 + (a % width - min_col));
            key.push_back((b / width - min_row) * 64 + (b % width - min_col));
        }
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        Graph pg = piece_graph(piece);
        int found = -1;
        for (size_t i = 0; i < catalog.classes.size(); ++i)
            if (are_isomorphic(catalog.classes[i].representative, pg)) {
                found = static_cast<int>(i);
                break;
            }
        cache[key] = found;
        return found;
    }
};

std::vector<Piece> snapshot_pieces(const Snapshot& s) {
    // Edge-connected components of the snapshot.
    std::map<int, int> comp;
    std::vector<int> cells;
    for (int row = 0; row < s.k; ++row)
        for (int col = 0; col < s.w; ++col)
            if (s.occupied(row, col)) {
                int c = row * s.w + col;
                comp[c] = c;
                cells.push_back(c);
            }
    std::function<int(int)> find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (auto [a, b] : s.edges) comp[find(a)] = find(b);
    std::map<int, Piece> by_root;
    for (int c : cells) by_root[find(c)].cells.push_back(c);
    for (auto [a, b] : s.edges) by_root[find(a)].edges.push_back({a, b});
    std::vector<Piece> pieces;
    for (auto& [root, piece] : by_root) {
        std::sort(piece.cells.begin(), piece.cells.end());
        std::sort(piece.edges.begin(), piece.edges.end());
        pieces.push_back(std::move(piece));
    }
    return pieces;
}

ColumnSignature column_signature(const Snapshot& s, int col) {
    ColumnSignature sig;
    for (int row = 0; row < s.k; ++row)
        if (s.occupied(row, col)) sig.cells |= 1u << row;
    for (auto [a, b] : s.edges) {
        if (a % s.w == col && b % s.w == col && b - a == s.w) sig.vedges |= 1u << (a / s.w);
    }
    return sig;
}

struct Enumerator {
    int k, w;
    const ComponentCatalog& catalog;
    std::uint64_t budget;
    int cap;
    ClassLookup lookup;
    std::uint64_t nodes = 0;
    bool incomplete = false;
    std::vector<SnapshotInfo> out;

    // Mutable scan state, trail-undone.
    std::vector<int> comp_of;                // per cell, -1 when empty/undecided
    std::vector<std::pair<int, int>> edges;  // chosen edges so far
    std::uint64_t cells = 0;

    Enumerator(int k_, int w_, const ComponentCatalog& cat, std::uint64_t budget_, int cap_)
        : k(k_), w(w_), catalog(cat), budget(budget_), cap(cap_), lookup(cat, w_) {
        comp_of.assign(k * w, -1);
    }

    int cell_index(int row, int col) const { return row * w + col; }

    Piece extract(int root) const {
        Piece piece;
        for (int c = 0; c < k * w; ++c)
            if (comp_of[c] == root) piece.cells.push_back(c);
        for (auto [a, b] : edges)
            if (comp_of[a] == root) piece.edges.push_back({a, b});
        std::sort(piece.edges.begin(), piece.edges.end());
        return piece;
    }

    int comp_size(int root) const {
        int s = 0;
        for (int c = 0; c < k * w; ++c)
            if (comp_of[c] == root) ++s;
        return s;
    }

    int comp_min_col(int root) const {
        int m = w;
        for (int c = 0; c < k * w; ++c)
            if (comp_of[c] == root) m = std::min(m, c % w);
        return m;
    }

    int comp_max_col(int root) const {
        int m = -1;
        for (int c = 0; c < k * w; ++c)
            if (comp_of[c] == root) m = std::max(m, c % w);
        return m;
    }

    // A closed or final component violates the snapshot-set condition when it
    // is fully contained (touching neither boundary column or both) and not
    // isomorphic to any catalog class.
    bool component_ok(int root, bool final_pass) {
        int lo = comp_min_col(root), hi = comp_max_col(root);
        bool left = lo == 0, right = hi == w - 1;
        bool fully_contained = (left && right) || (!left && !right);
        if (!final_pass && right) return true;  // can only happen on the final pass
        if (fully_contained) return lookup.class_of(extract(root)) >= 0;
        return true;
    }

    void finalize() {
        Snapshot s;
        s.k = k;
        s.w = w;
        s.cells = cells;
        s.edges = edges;
        std::sort(s.edges.begin(), s.edges.end());
        SnapshotInfo info;
        info.snap = s;
        size_t t = catalog.classes.size();
        info.freq_cen.assign(t, 0);
        info.freq_left.assign(t, 0);
        info.freq_right.assign(t, 0);
        info.source_ok = true;
        info.sink_ok = true;
        for (const auto& piece : snapshot_pieces(s)) {
            int lo = piece.cells.front() % w, hi = lo;
            for (int c : piece.cells) {
                lo = std::min(lo, c % w);
                hi = std::max(hi, c % w);
            }
            bool left = lo == 0, right = hi == w - 1;
            int cls = lookup.class_of(piece);
            if ((left && right) || (!left && !right)) {
                if (cls < 0) return;  // filtered: FC component outside the catalog
                info.freq_cen[cls] += 1;
            } else if (left) {
                if (cls < 0)
                    info.source_ok = false;
                else
                    info.freq_left[cls] += 1;
            } else {
                if (cls < 0)
                    info.sink_ok = false;
                else
                    info.freq_right[cls] += 1;
            }
        }
        info.left_sig = column_signature(s, 0);
        info.right_sig = column_signature(s, w - 1);
        out.push_back(std::move(info));
    }

    void scan(int t) {
        if (incomplete) return;
        if (++nodes > budget) {
            incomplete = true;
            return;
        }
        int col = t / k;
        if (t % k == 0 && col >= 2) {
            // Columns 0..col-1 decided; components with no cell in column
            // col-1 are closed. Check the newly closed ones.
            std::set<int> roots;
            for (int c = 0; c < k * w; ++c)
                if (comp_of[c] >= 0 && comp_max_col(comp_of[c]) == col - 2) roots.insert(comp_of[c]);
            for (int root : roots)
                if (!component_ok(root, false)) return;
        }
        if (t == k * w) {
            finalize();
            return;
        }
        int row = t % k;
        int cell = cell_index(row, col);

        // Empty.
        scan(t + 1);
        if (incomplete) return;

        // Occupied, with every subset of back-edges to decided neighbors.
        int up = row > 0 ? cell_index(row - 1, col) : -1;
        int left = col > 0 ? cell_index(row, col - 1) : -1;
        bool up_ok = up >= 0 && comp_of[up] >= 0;
        bool left_ok = left >= 0 && comp_of[left] >= 0;
        for (int take_up = 0; take_up <= (up_ok ? 1 : 0); ++take_up) {
            for (int take_left = 0; take_left <= (left_ok ? 1 : 0); ++take_left) {
                std::vector<std::pair<int, int>> saved_comp_changes;
                auto set_comp = [&](int c, int value) {
                    saved_comp_changes.push_back({c, comp_of[c]});
                    comp_of[c] = value;
                };
                cells |= 1ull << cell;
                set_comp(cell, cell);
                size_t edges_before = edges.size();
                bool ok = true;
                if (take_up) {
                    edges.push_back({up, cell});
                    int r1 = comp_of[up], r2 = comp_of[cell];
                    if (r1 != r2)
                        for (int c = 0; c < k * w; ++c)
                            if (comp_of[c] == r2) set_comp(c, r1);
                }
                if (take_left) {
                    edges.push_back({left, cell});
                    int r1 = comp_of[left], r2 = comp_of[cell];
                    if (r1 != r2)
                        for (int c = 0; c < k * w; ++c)
                            if (comp_of[c] == r2) set_comp(c, r1);
                }
                if (cap > 0 && comp_size(comp_of[cell]) > cap) ok = false;
                if (ok) scan(t + 1);
                while (edges.size() > edges_before) edges.pop_back();
                for (auto it = saved_comp_changes.rbegin(); it != saved_comp_changes.rend(); ++it)
                    comp_of[it->first] = it->second;
                cells &= ~(1ull << cell);
                if (incomplete) return;
            }
        }
    }
};

}  // namespace

SnapshotSet enumerate_snapshots(int k, int w, const ComponentCatalog& catalog,
                                std::uint64_t budget, int component_cap) {
    if (k < 1 || w < 1 || k * w > 60)
        throw GridbedError("enumerate_snapshots: lattice out of supported range");
    Enumerator e(k, w, catalog, budget, component_cap);
    e.scan(0);
    SnapshotSet set;
    set.k = k;
    set.w = w;
    set.infos = std::move(e.out);
    set.complete = !e.incomplete;
    std::sort(set.infos.begin(), set.infos.end(),
              [](const SnapshotInfo& a, const SnapshotInfo& b) { return a.snap < b.snap; });
    return set;
}

namespace {

// Glues a left snapshot (width w) with a right snapshot (width wr) on the
// shared column; returns the crossing components' class counts, or nullopt
// when some crossing component is not a catalog class. Signatures must match.
std::optional<std::vector<int>> junction_check(const Snapshot& sl, const Snapshot& sr,
                                               const ComponentCatalog& catalog,
                                               ClassLookup& lookup) {
    int k = sl.k, w = sl.w, wr = sr.w;
    int total_w = w + wr - 1;
    auto glue_index = [&](int cell, bool right) {
        int row = cell / (right ? wr : w), col = cell % (right ? wr : w);
        return row * total_w + col + (right ? (w - 1) : 0);
    };
    std::set<int> cells;
    std::set<std::pair<int, int>> edges;
    for (int row = 0; row < k; ++row) {
        for (int col = 0; col < w; ++col)
            if (sl.occupied(row, col)) cells.insert(row * total_w + col);
        for (int col = 0; col < wr; ++col)
            if (sr.occupied(row, col)) cells.insert(row * total_w + col + w - 1);
    }
    for (auto [a, b] : sl.edges) edges.insert({glue_index(a, false), glue_index(b, false)});
    for (auto [a, b] : sr.edges) edges.insert({glue_index(a, true), glue_index(b, true)});

    std::map<int, int> comp;
    for (int c : cells) comp[c] = c;
    std::function<int(int)> find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (auto [a, b] : edges) comp[find(a)] = find(b);
    std::map<int, Piece> by_root;
    for (int c : cells) by_root[find(c)].cells.push_back(c);
    for (auto [a, b] : edges) by_root[find(a)].edges.push_back({a, b});

    std::vector<int> freq(catalog.classes.size(), 0);
    for (auto& [root, piece] : by_root) {
        int lo = total_w, hi = -1;
        for (int c : piece.cells) {
            lo = std::min(lo, c % total_w);
            hi = std::max(hi, c % total_w);
        }
        bool crosses = lo <= w - 1 && hi >= w - 1;
        if (!crosses) continue;
        std::sort(piece.edges.begin(), piece.edges.end());
        int cls = lookup.class_of(piece);
        if (cls < 0) return std::nullopt;
        if (lo > 0 && hi < total_w - 1) freq[cls] += 1;  // boundary-intersecting
    }
    return freq;
}

}  // namespace

std::vector<AdjacencyEntry> compute_adjacency(const SnapshotSet& left, const SnapshotSet& right,
                                              const ComponentCatalog& catalog) {
    std::vector<AdjacencyEntry> entries;
    std::map<ColumnSignature, std::vector<int>> right_by_sig;
    for (size_t j = 0; j < right.infos.size(); ++j)
        right_by_sig[right.infos[j].left_sig].push_back(static_cast<int>(j));
    ClassLookup lookup(catalog, left.w + right.w - 1);
    for (size_t i = 0; i < left.infos.size(); ++i) {
        auto it = right_by_sig.find(left.infos[i].right_sig);
        if (it == right_by_sig.end()) continue;
        for (int j : it->second) {
            auto freq = junction_check(left.infos[i].snap, right.infos[j].snap, catalog, lookup);
            if (freq) entries.push_back({static_cast<int>(i), j, std::move(*freq)});
        }
    }
    return entries;
}

BlockDigraph build_digraph(int start_index, int end_index, const std::vector<int>& chosen,
                           const std::vector<AdjacencyEntry>& mid_adj,
                           const std::vector<AdjacencyEntry>& end_adj) {
    BlockDigraph d;
    d.middle = chosen;
    d.num_vertices = 2 + static_cast<int>(chosen.size());
    d.start_index = start_index;
    d.end_index = end_index;
    std::map<int, int> vertex_of;  // snapshot index -> digraph vertex (middles)
    for (size_t i = 0; i < chosen.size(); ++i) vertex_of[chosen[i]] = 2 + static_cast<int>(i);
    // Arcs out of start, among middles (no arcs into start or out of end).
    for (const auto& e : mid_adj) {
        bool from_start = e.left == start_index;
        bool to_mid = vertex_of.count(e.right) != 0;
        bool from_mid = vertex_of.count(e.left) != 0;
        if (from_start && to_mid) d.arcs.push_back({0, vertex_of[e.right], e.boundary_freq});
        if (from_mid && to_mid) d.arcs.push_back({vertex_of[e.left], vertex_of[e.right], e.boundary_freq});
    }
    for (const auto& e : end_adj) {
        if (e.right != end_index) continue;
        if (e.left == start_index) d.arcs.push_back({0, 1, e.boundary_freq});
        if (vertex_of.count(e.left)) d.arcs.push_back({vertex_of[e.left], 1, e.boundary_freq});
    }
    return d;
}

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

void trees_rec(int n, const std::vector<std::pair<int, int>>& edges, size_t i, Dsu dsu,
               std::vector<std::pair<int, int>> chosen,
               std::vector<std::vector<std::pair<int, int>>>& out) {
    if (static_cast<int>(chosen.size()) == n - 1) {
        out.push_back(chosen);
        return;
    }
    if (i == edges.size()) return;
    if (edges.size() - i + chosen.size() < static_cast<size_t>(n - 1)) return;
    // Include edges[i] when it joins two components (contraction).
    {
        Dsu d2 = dsu;
        if (d2.unite(edges[i].first, edges[i].second)) {
            auto c2 = chosen;
            c2.push_back(edges[i]);
            trees_rec(n, edges, i + 1, std::move(d2), std::move(c2), out);
        }
    }
    // Exclude edges[i] (deletion).
    trees_rec(n, edges, i + 1, std::move(dsu), std::move(chosen), out);
}

}  // namespace

std::vector<std::vector<std::pair<int, int>>> enumerate_spanning_trees(
    int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<std::pair<int, int>>> out;
    if (n == 0) return out;
    if (n == 1) {
        out.push_back({});
        return out;
    }
    std::vector<std::pair<int, int>> es;
    for (auto [a, b] : edges) {
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        es.emplace_back(a, b);
    }
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    trees_rec(n, es, 0, Dsu(n), {}, out);
    return out;
}

std::optional<std::vector<int>> eulerian_path(const MultiDigraph& d, int start, int end) {
    int total = d.total_arcs();
    std::map<int, std::map<int, int>> rem;  // from -> (to -> remaining)
    for (const auto& [arc, c] : d.arcs) rem[arc.first][arc.second] = c;
    std::vector<int> stack = {start}, path;
    while (!stack.empty()) {
        int v = stack.back();
        auto& out = rem[v];
        auto it = out.begin();
        while (it != out.end() && it->second == 0) ++it;
        if (it == out.end()) {
            path.push_back(v);
            stack.pop_back();
        } else {
            it->second -= 1;
            stack.push_back(it->first);
        }
    }
    std::reverse(path.begin(), path.end());
    if (static_cast<int>(path.size()) != total + 1) return std::nullopt;
    if (path.front() != start || path.back() != end) return std::nullopt;
    return path;
}

namespace {

// Stamps the block sequence into the plane and maps G's components onto the
// stamped shape. Fails (nullopt) when the stamped component multiset does not
// match G's, which can happen for ILP-feasible flows because Eq. (1e) counts
// snapshot occurrences by out-flow and so never counts the end block's fully
// contained components.
std::optional<GridEmbedding> stamp_witness(const Graph& g, const ComponentCatalog& catalog,
                                           const std::vector<const Snapshot*>& blocks, int k) {
    std::set<int> cells;  // global cell = row * big_w + col
    std::set<std::pair<int, int>> edges;
    int offset = 0, big_w = 0;
    for (const auto* s : blocks) big_w += s->w - 1;
    big_w += 1;
    offset = 0;
    for (const auto* s : blocks) {
        auto remap = [&](int cell) { return (cell / s->w) * big_w + (cell % s->w) + offset; };
        for (int row = 0; row < k; ++row)
            for (int col = 0; col < s->w; ++col)
                if (s->occupied(row, col)) cells.insert(row * big_w + col + offset);
        for (auto [a, b] : s->edges) {
            int x = remap(a), y = remap(b);
            if (x > y) std::swap(x, y);
            edges.insert({x, y});
        }
        offset += s->w - 1;
    }
    // Components of the stamped shape.
    std::map<int, int> comp;
    for (int c : cells) comp[c] = c;
    std::function<int(int)> find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (auto [a, b] : edges) comp[find(a)] = find(b);
    std::map<int, Piece> by_root;
    for (int c : cells) by_root[find(c)].cells.push_back(c);
    for (auto [a, b] : edges) by_root[find(a)].edges.push_back({a, b});

    std::vector<size_t> next_copy(catalog.classes.size(), 0);
    GridEmbedding f;
    f.k = k;
    f.r = big_w;
    for (auto& [root, piece] : by_root) {
        std::sort(piece.edges.begin(), piece.edges.end());
        Graph pg = piece_graph(piece);
        int cls = -1;
        std::vector<int> iso;  // class representative vertex -> piece vertex
        for (size_t i = 0; i < catalog.classes.size(); ++i) {
            auto m = find_isomorphism(catalog.classes[i].representative, pg);
            if (m) {
                cls = static_cast<int>(i);
                iso = *m;
                break;
            }
        }
        if (cls < 0) return std::nullopt;
        if (next_copy[cls] >= catalog.classes[cls].copies.size()) return std::nullopt;
        const auto& copy = catalog.classes[cls].copies[next_copy[cls]++];
        for (size_t rep = 0; rep < copy.size(); ++rep) {
            int cell = piece.cells[iso[rep]];
            f.place(copy[rep], {cell / big_w + 1, cell % big_w + 1});
        }
    }
    for (size_t cls = 0; cls < catalog.classes.size(); ++cls)
        if (next_copy[cls] != catalog.classes[cls].copies.size()) return std::nullopt;
    return f;
}

GridEmbedding dense_fill_witness(int n, int k, int r) {
    GridEmbedding f;
    f.k = k;
    f.r = r;
    for (int v = 0; v < n; ++v) f.place(v, {v / r + 1, v % r + 1});
    return f;
}

}  // namespace

MccSolveResult solve_mcc_k(const Graph& g, int k, int r, std::uint64_t budget) {
    if (k < 1 || r < 1) throw GridbedError("solve_mcc_k: k, r must be >= 1");
    MccSolveResult out;
    SolveResult& res = out.result;

    auto filter = grid_necessary_filter(g);
    if (!filter.pass) {
        res.answer = Answer::no;
        return out;
    }
    if (g.n > k * r) {
        res.answer = Answer::no;
        return out;
    }
    if (g.n == 0) {
        res.answer = Answer::yes;
        res.witness = dense_fill_witness(0, k, r);
        return out;
    }
    ComponentCatalog catalog = component_catalog(g);
    int mcc = catalog.mcc();
    if (mcc == 1) {
        // Isolated vertices only; the block formula divides by mcc - 1.
        res.answer = Answer::yes;
        res.witness = dense_fill_witness(g.n, k, r);
        return out;
    }
    if (mcc > k * r) {
        res.answer = Answer::no;
        return out;
    }
    BlockPlan plan = (r >= 2) ? block_plan(r, mcc) : BlockPlan{1, {r}};
    if (plan.p <= 1) {
        res = brute_force_embed(g, k, r, budget);
        return out;
    }
    int p = plan.p;
    int w = mcc;
    int ell = plan.widths.back();

    // Snapshot sets; the component cap is a sound refinement (see notes in
    // enumerate_snapshots' contract): oversized components can never occur in
    // a Source/Sink snapshot or either side of an adjacency.
    SnapshotSet sw = enumerate_snapshots(k, w, catalog, budget, mcc);
    if (!sw.complete) {
        res.answer = Answer::unknown;
        return out;
    }
    SnapshotSet sl = (ell == w) ? sw : enumerate_snapshots(k, ell, catalog, budget, mcc);
    if (!sl.complete) {
        res.answer = Answer::unknown;
        return out;
    }

    size_t t = catalog.classes.size();
    std::vector<int> num(t);
    for (size_t i = 0; i < t; ++i) num[i] = catalog.classes[i].multiplicity;

    // Lazy adjacency: (left index in sw, right index in sw or sl).
    ClassLookup mid_lookup(catalog, 2 * w - 1);
    ClassLookup end_lookup(catalog, w + ell - 1);
    std::map<std::pair<int, int>, std::optional<std::vector<int>>> mid_cache, end_cache;
    auto mid_arc = [&](int i, int j) -> const std::optional<std::vector<int>>& {
        auto it = mid_cache.find({i, j});
        if (it != mid_cache.end()) return it->second;
        std::optional<std::vector<int>> freq;
        if (sw.infos[i].right_sig == sw.infos[j].left_sig)
            freq = junction_check(sw.infos[i].snap, sw.infos[j].snap, catalog, mid_lookup);
        return mid_cache.emplace(std::make_pair(i, j), std::move(freq)).first->second;
    };
    auto end_arc = [&](int i, int j) -> const std::optional<std::vector<int>>& {
        auto it = end_cache.find({i, j});
        if (it != end_cache.end()) return it->second;
        std::optional<std::vector<int>> freq;
        if (sw.infos[i].right_sig == sl.infos[j].left_sig)
            freq = junction_check(sw.infos[i].snap, sl.infos[j].snap, catalog, end_lookup);
        return end_cache.emplace(std::make_pair(i, j), std::move(freq)).first->second;
    };

    std::vector<int> sources, sinks;
    for (size_t i = 0; i < sw.infos.size(); ++i)
        if (sw.infos[i].source_ok) sources.push_back(static_cast<int>(i));
    for (size_t j = 0; j < sl.infos.size(); ++j)
        if (sl.infos[j].sink_ok) sinks.push_back(static_cast<int>(j));

    // For p >= 3 the middle relation is needed; those instances have small
    // lattices, so the full relation is affordable.
    std::vector<AdjacencyEntry> mid_all, end_all;
    if (p >= 3) {
        mid_all = compute_adjacency(sw, sw, catalog);
        end_all = compute_adjacency(sw, sl, catalog);
    }

    std::uint64_t work = 0;
    auto charge = [&](std::uint64_t units) {
        work += units;
        return work <= budget;
    };
    bool budget_hit = false;

    auto try_digraph = [&](const BlockDigraph& d, int start_idx, int end_idx) -> bool {
        // Every middle vertex needs both in- and out-arcs.
        std::vector<int> indeg(d.num_vertices, 0), outdeg(d.num_vertices, 0);
        for (const auto& a : d.arcs) {
            outdeg[a.from]++;
            indeg[a.to]++;
        }
        for (int v = 2; v < d.num_vertices; ++v)
            if (indeg[v] == 0 || outdeg[v] == 0) return false;
        if (outdeg[0] == 0 || indeg[1] == 0) return false;

        // Spanning trees of the underlying undirected graph.
        std::vector<std::pair<int, int>> undirected;
        for (const auto& a : d.arcs)
            if (a.from != a.to) undirected.push_back({std::min(a.from, a.to), std::max(a.from, a.to)});
        auto trees = enumerate_spanning_trees(d.num_vertices, undirected);
        const SnapshotInfo& sti = sw.infos[start_idx];
        const SnapshotInfo& eni = sl.infos[end_idx];

        for (const auto& tree : trees) {
            if (!charge(1)) {
                budget_hit = true;
                return false;
            }
            IlpSystem sys;
            sys.num_vars = static_cast<int>(d.arcs.size());
            sys.lower.assign(sys.num_vars, 0);
            sys.upper.assign(sys.num_vars, p - 1);
            auto add_eq = [&](std::map<int, long long> terms, long long rhs) {
                LinearConstraint c;
                c.kind = LinearConstraint::Kind::eq;
                for (auto [v, a] : terms)
                    if (a != 0) c.terms.emplace_back(v, static_cast<int>(a));
                c.rhs = rhs;
                sys.constraints.push_back(std::move(c));
            };
            // (1a) flow conservation at middles.
            for (int v = 2; v < d.num_vertices; ++v) {
                std::map<int, long long> terms;
                for (size_t a = 0; a < d.arcs.size(); ++a) {
                    if (d.arcs[a].from == v) terms[static_cast<int>(a)] += 1;
                    if (d.arcs[a].to == v) terms[static_cast<int>(a)] -= 1;
                }
                add_eq(std::move(terms), 0);
            }
            // (1b) unit flow out of start; (1c) unit flow into end.
            {
                std::map<int, long long> terms;
                for (size_t a = 0; a < d.arcs.size(); ++a)
                    if (d.arcs[a].from == 0) terms[static_cast<int>(a)] += 1;
                add_eq(std::move(terms), 1);
            }
            {
                std::map<int, long long> terms;
                for (size_t a = 0; a < d.arcs.size(); ++a)
                    if (d.arcs[a].to == 1) terms[static_cast<int>(a)] += 1;
                add_eq(std::move(terms), 1);
            }
            // (1d) total flow p - 1.
            {
                std::map<int, long long> terms;
                for (size_t a = 0; a < d.arcs.size(); ++a) terms[static_cast<int>(a)] += 1;
                add_eq(std::move(terms), p - 1);
            }
            // (1e) component counting, literal form: occurrences by out-flow.
            for (size_t i = 0; i < t; ++i) {
                std::map<int, long long> terms;
                long long base = sti.freq_left[i] + eni.freq_right[i];
                for (size_t a = 0; a < d.arcs.size(); ++a) {
                    long long coef = d.arcs[a].boundary_freq[i];
                    int from = d.arcs[a].from;
                    int cen = from == 0 ? sti.freq_cen[i]
                              : from == 1 ? 0
                                          : sw.infos[d.middle[from - 2]].freq_cen[i];
                    coef += cen;
                    terms[static_cast<int>(a)] += coef;
                }
                add_eq(std::move(terms), static_cast<long long>(num[i]) - base);
            }
            // (1f) spanning tree arcs at least one (sum over both directions).
            for (auto [x, y] : tree) {
                LinearConstraint c;
                c.kind = LinearConstraint::Kind::ge;
                std::map<int, long long> terms;
                for (size_t a = 0; a < d.arcs.size(); ++a)
                    if ((d.arcs[a].from == x && d.arcs[a].to == y) ||
                        (d.arcs[a].from == y && d.arcs[a].to == x))
                        terms[static_cast<int>(a)] += 1;
                for (auto [v, a] : terms) c.terms.emplace_back(v, static_cast<int>(a));
                c.rhs = 1;
                sys.constraints.push_back(std::move(c));
            }
            auto x = ilp_feasible(sys);
            if (!x) continue;
            // Reconstruct: Eulerian path over the flow multidigraph.
            MultiDigraph dd;
            dd.n = d.num_vertices;
            for (size_t a = 0; a < d.arcs.size(); ++a)
                dd.add_arc(d.arcs[a].from, d.arcs[a].to, static_cast<int>((*x)[a]));
            auto path = eulerian_path(dd, 0, 1);
            if (!path) continue;
            std::vector<const Snapshot*> blocks;
            for (int v : *path) {
                if (v == 0)
                    blocks.push_back(&sti.snap);
                else if (v == 1)
                    blocks.push_back(&eni.snap);
                else
                    blocks.push_back(&sw.infos[d.middle[v - 2]].snap);
            }
            auto witness = stamp_witness(g, catalog, blocks, k);
            if (!witness) continue;
            auto check = validate(g, *witness);
            if (!check.ok) continue;
            res.answer = Answer::yes;
            res.witness = std::move(*witness);
            IlpCertificate cert;
            cert.digraph = d;
            cert.tree = tree;
            cert.flow = *x;
            cert.p = p;
            cert.start_snapshot = start_idx;
            cert.end_snapshot = end_idx;
            cert.num = num;
            cert.freq_left_start.assign(sti.freq_left.begin(), sti.freq_left.end());
            cert.freq_right_end.assign(eni.freq_right.begin(), eni.freq_right.end());
            cert.freq_cen_middle.resize(d.num_vertices);
            cert.freq_cen_middle[0] = sti.freq_cen;
            cert.freq_cen_middle[1] = eni.freq_cen;
            for (int v = 2; v < d.num_vertices; ++v)
                cert.freq_cen_middle[v] = sw.infos[d.middle[v - 2]].freq_cen;
            out.certificate = std::move(cert);
            return true;
        }
        return false;
    };

    for (int start_idx : sources) {
        for (int end_idx : sinks) {
            if (budget_hit) break;
            if (!charge(1)) {
                budget_hit = true;
                break;
            }
            const SnapshotInfo& sti = sw.infos[start_idx];
            const SnapshotInfo& eni = sl.infos[end_idx];
            bool viable = true;
            for (size_t i = 0; i < t && viable; ++i)
                if (sti.freq_left[i] + eni.freq_right[i] > num[i]) viable = false;
            if (!viable) continue;

            if (p == 2) {
                const auto& freq = end_arc(start_idx, end_idx);
                if (!freq) continue;
                BlockDigraph d;
                d.num_vertices = 2;
                d.start_index = start_idx;
                d.end_index = end_idx;
                d.arcs.push_back({0, 1, *freq});
                if (try_digraph(d, start_idx, end_idx)) return out;
                continue;
            }

            // p >= 3: candidate middles must be start-reachable and
            // end-coreachable in the full relation.
            std::vector<std::vector<int>> fwd(sw.infos.size()), bwd(sw.infos.size());
            for (const auto& e : mid_all) {
                fwd[e.left].push_back(e.right);
                bwd[e.right].push_back(e.left);
            }
            std::vector<char> reach(sw.infos.size(), 0), coreach(sw.infos.size(), 0);
            {
                std::vector<int> stack;
                for (int nxt : fwd[start_idx])
                    if (!reach[nxt]) {
                        reach[nxt] = 1;
                        stack.push_back(nxt);
                    }
                while (!stack.empty()) {
                    int v = stack.back();
                    stack.pop_back();
                    for (int nxt : fwd[v])
                        if (!reach[nxt]) {
                            reach[nxt] = 1;
                            stack.push_back(nxt);
                        }
                }
                std::vector<int> estack;
                for (const auto& e : end_all)
                    if (e.right == end_idx && !coreach[e.left]) {
                        coreach[e.left] = 1;
                        estack.push_back(e.left);
                    }
                while (!estack.empty()) {
                    int v = estack.back();
                    estack.pop_back();
                    for (int prev : bwd[v])
                        if (!coreach[prev]) {
                            coreach[prev] = 1;
                            estack.push_back(prev);
                        }
                }
            }
            std::vector<int> pool;
            for (size_t i = 0; i < sw.infos.size(); ++i)
                if (reach[i] && coreach[i]) pool.push_back(static_cast<int>(i));

            int max_size = p - 2;  // (1d)+(1f) force every middle to occur
            std::vector<int> subset;
            std::function<bool(int, int)> iterate = [&](int from, int remaining) -> bool {
                if (budget_hit) return false;
                if (!charge(1)) {
                    budget_hit = true;
                    return false;
                }
                BlockDigraph d = build_digraph(start_idx, end_idx, subset, mid_all, end_all);
                if (try_digraph(d, start_idx, end_idx)) return true;
                if (remaining == 0) return false;
                for (int i = from; i < static_cast<int>(pool.size()); ++i) {
                    subset.push_back(pool[i]);
                    if (iterate(i + 1, remaining - 1)) return true;
                    subset.pop_back();
                }
                return false;
            };
            if (iterate(0, max_size)) return out;
        }
        if (budget_hit) break;
    }
    res.answer = budget_hit ? Answer::unknown : Answer::no;
    return out;
}

}  // namespace gridbed
