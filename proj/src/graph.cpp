#include "gridbed/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

namespace gridbed {

Graph Graph::make(int n, std::vector<std::pair<int, int>> edge_list) {
    if (n < 0) throw GridbedError("graph: negative vertex count");
    for (auto& [u, v] : edge_list) {
        if (u == v) throw GridbedError("graph: self-loop at vertex " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw GridbedError("graph: endpoint out of range: " + std::to_string(u) + " " +
                               std::to_string(v));
        if (u > v) std::swap(u, v);
    }
    std::sort(edge_list.begin(), edge_list.end());
    for (size_t i = 1; i < edge_list.size(); ++i)
        if (edge_list[i] == edge_list[i - 1])
            throw GridbedError("graph: duplicate edge " + std::to_string(edge_list[i].first) +
                               "-" + std::to_string(edge_list[i].second));
    Graph g;
    g.n = n;
    g.edges = std::move(edge_list);
    g.adj.assign(n, {});
    for (auto [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& row : g.adj) std::sort(row.begin(), row.end());
    return g;
}

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

int Graph::max_degree() const {
    int d = 0;
    for (int v = 0; v < n; ++v) d = std::max(d, degree(v));
    return d;
}

Graph Graph::induced(const std::vector<int>& vertices) const {
    std::map<int, int> idx;
    for (size_t i = 0; i < vertices.size(); ++i) idx[vertices[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> es;
    for (auto [u, v] : edges) {
        auto iu = idx.find(u), iv = idx.find(v);
        if (iu != idx.end() && iv != idx.end()) es.emplace_back(iu->second, iv->second);
    }
    return Graph::make(static_cast<int>(vertices.size()), std::move(es));
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<std::pair<int, int>> es = a.edges;
    for (auto [u, v] : b.edges) es.emplace_back(u + a.n, v + a.n);
    return Graph::make(a.n + b.n, std::move(es));
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<std::vector<int>> comps;
    std::vector<int> seen(g.n, 0);
    for (int s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        std::vector<int> comp;
        std::queue<int> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            comp.push_back(v);
            for (int w : g.adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::vector<int> distances_from(const Graph& g, int v) {
    if (v < 0 || v >= g.n) throw GridbedError("distances_from: vertex out of range");
    std::vector<int> dist(g.n, -1);
    std::queue<int> q;
    dist[v] = 0;
    q.push(v);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : g.adj[u])
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
    }
    return dist;
}

std::vector<std::vector<int>> all_pairs_distances(const Graph& g) {
    std::vector<std::vector<int>> d(g.n);
    for (int v = 0; v < g.n; ++v) d[v] = distances_from(g, v);
    return d;
}

bool is_connected(const Graph& g) {
    if (g.n == 0) return true;
    return static_cast<int>(connected_components(g).size()) == 1;
}

bool is_tree(const Graph& g) {
    return is_connected(g) && g.edge_count() == g.n - 1;
}

namespace {

std::vector<int> degree_sequence(const Graph& g) {
    std::vector<int> ds(g.n);
    for (int v = 0; v < g.n; ++v) ds[v] = g.degree(v);
    std::sort(ds.begin(), ds.end());
    return ds;
}

// Signature combining degree and sorted neighbor degrees; a cheap refinement
// used to prune the permutation search.
std::vector<std::pair<int, std::vector<int>>> vertex_signatures(const Graph& g) {
    std::vector<std::pair<int, std::vector<int>>> sig(g.n);
    for (int v = 0; v < g.n; ++v) {
        std::vector<int> nd;
        for (int w : g.adj[v]) nd.push_back(g.degree(w));
        std::sort(nd.begin(), nd.end());
        sig[v] = {g.degree(v), std::move(nd)};
    }
    return sig;
}

bool extend_mapping(const Graph& g1, const Graph& g2,
                    const std::vector<std::pair<int, std::vector<int>>>& sig1,
                    const std::vector<std::pair<int, std::vector<int>>>& sig2,
                    std::vector<int>& map12, std::vector<int>& used2, int next) {
    if (next == g1.n) return true;
    for (int cand = 0; cand < g2.n; ++cand) {
        if (used2[cand]) continue;
        if (sig1[next] != sig2[cand]) continue;
        bool ok = true;
        for (int w : g1.adj[next]) {
            if (w < next && !g2.has_edge(map12[w], cand)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            // Non-edges must stay non-edges (bijective, both directions).
            for (int prev = 0; prev < next && ok; ++prev)
                if (!g1.has_edge(prev, next) && g2.has_edge(map12[prev], cand)) ok = false;
        }
        if (!ok) continue;
        map12[next] = cand;
        used2[cand] = 1;
        if (extend_mapping(g1, g2, sig1, sig2, map12, used2, next + 1)) return true;
        used2[cand] = 0;
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const Graph& g1, const Graph& g2) {
    if (g1.n != g2.n || g1.edge_count() != g2.edge_count()) return std::nullopt;
    if (degree_sequence(g1) != degree_sequence(g2)) return std::nullopt;
    auto sig1 = vertex_signatures(g1);
    auto sig2 = vertex_signatures(g2);
    {
        auto s1 = sig1, s2 = sig2;
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
        if (s1 != s2) return std::nullopt;
    }
    std::vector<int> map12(g1.n, -1), used2(g2.n, 0);
    if (extend_mapping(g1, g2, sig1, sig2, map12, used2, 0)) return map12;
    return std::nullopt;
}

bool are_isomorphic(const Graph& g1, const Graph& g2) {
    return find_isomorphism(g1, g2).has_value();
}

int ComponentCatalog::mcc() const {
    int m = 0;
    for (const auto& c : classes) m = std::max(m, c.representative.n);
    return m;
}

ComponentCatalog component_catalog(const Graph& g) {
    ComponentCatalog cat;
    cat.vertex_to_class.assign(g.n, -1);
    for (const auto& comp : connected_components(g)) {
        Graph sub = g.induced(comp);
        int found = -1;
        std::vector<int> iso;
        for (size_t c = 0; c < cat.classes.size(); ++c) {
            auto m = find_isomorphism(cat.classes[c].representative, sub);
            if (m) {
                found = static_cast<int>(c);
                iso = *m;
                break;
            }
        }
        if (found < 0) {
            ComponentCatalog::ClassEntry e;
            e.representative = sub;
            e.multiplicity = 0;
            cat.classes.push_back(std::move(e));
            found = static_cast<int>(cat.classes.size()) - 1;
            iso.resize(comp.size());
            std::iota(iso.begin(), iso.end(), 0);
        }
        auto& entry = cat.classes[found];
        entry.multiplicity += 1;
        std::vector<int> copy(comp.size());
        for (size_t i = 0; i < comp.size(); ++i) copy[i] = comp[iso[i]];
        entry.copies.push_back(std::move(copy));
        for (int v : comp) cat.vertex_to_class[v] = found;
    }
    return cat;
}

FilterResult grid_necessary_filter(const Graph& g) {
    if (g.max_degree() > 4) return {false, "vertex of degree > 4"};
    if (g.edge_count() > 2 * g.n) return {false, "more than 2n edges"};
    // Odd cycle check: BFS 2-coloring per component.
    std::vector<int> color(g.n, -1);
    for (int s = 0; s < g.n; ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : g.adj[v]) {
                if (color[w] < 0) {
                    color[w] = color[v] ^ 1;
                    q.push(w);
                } else if (color[w] == color[v]) {
                    return {false, "odd cycle"};
                }
            }
        }
    }
    return {true, ""};
}

void MultiDigraph::add_arc(int u, int v, int count) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw GridbedError("multidigraph: arc out of range");
    if (count <= 0) return;
    arcs[{u, v}] += count;
}

int MultiDigraph::multiplicity(int u, int v) const {
    auto it = arcs.find({u, v});
    return it == arcs.end() ? 0 : it->second;
}

int MultiDigraph::out_degree(int v) const {
    int d = 0;
    for (const auto& [a, c] : arcs)
        if (a.first == v) d += c;
    return d;
}

int MultiDigraph::in_degree(int v) const {
    int d = 0;
    for (const auto& [a, c] : arcs)
        if (a.second == v) d += c;
    return d;
}

int MultiDigraph::total_arcs() const {
    int t = 0;
    for (const auto& [a, c] : arcs) t += c;
    return t;
}

MultiDigraph join_vertices(const MultiDigraph& d, int u, int v) {
    if (u == v) throw GridbedError("join: u and v must differ");
    if (u < 0 || v < 0 || u >= d.n || v >= d.n) throw GridbedError("join: vertex out of range");
    // Old ids other than u,v keep their relative order; the merged vertex is last.
    std::vector<int> remap(d.n, -1);
    int next = 0;
    for (int i = 0; i < d.n; ++i)
        if (i != u && i != v) remap[i] = next++;
    int w = next;
    remap[u] = w;
    remap[v] = w;
    MultiDigraph out;
    out.n = d.n - 1;
    for (const auto& [a, c] : d.arcs) out.add_arc(remap[a.first], remap[a.second], c);
    return out;
}

}  // namespace gridbed
