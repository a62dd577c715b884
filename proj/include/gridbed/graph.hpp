#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gridbed {

struct GridbedError : std::runtime_error {
    explicit GridbedError(const std::string& what) : std::runtime_error(what) {}
};

/// Simple undirected graph on dense 0-based vertex ids.
/// Edges are stored normalized (u < v), sorted, without duplicates.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj;

    Graph() = default;

    // Throws on self-loops, duplicate edges or endpoints out of [0, n).
    static Graph make(int n, std::vector<std::pair<int, int>> edge_list);

    bool has_edge(int u, int v) const;
    int degree(int v) const { return static_cast<int>(adj.at(v).size()); }
    int max_degree() const;
    int edge_count() const { return static_cast<int>(edges.size()); }

    // Subgraph induced by `vertices`; vertex i of the result is vertices[i].
    Graph induced(const std::vector<int>& vertices) const;

    bool operator==(const Graph& other) const {
        return n == other.n && edges == other.edges;
    }
};

Graph disjoint_union(const Graph& a, const Graph& b);

std::vector<std::vector<int>> connected_components(const Graph& g);

// BFS distances from v; -1 marks unreachable vertices.
std::vector<int> distances_from(const Graph& g, int v);

std::vector<std::vector<int>> all_pairs_distances(const Graph& g);

bool is_connected(const Graph& g);
bool is_tree(const Graph& g);

bool are_isomorphic(const Graph& g1, const Graph& g2);

// Isomorphism g1 -> g2 as a vertex map, if one exists.
std::optional<std::vector<int>> find_isomorphism(const Graph& g1, const Graph& g2);

struct ComponentCatalog {
    struct ClassEntry {
        Graph representative;
        int multiplicity = 0;
        // Each copy maps representative vertex index -> vertex of the source graph.
        std::vector<std::vector<int>> copies;
    };
    std::vector<ClassEntry> classes;
    std::vector<int> vertex_to_class;

    int mcc() const;
};

ComponentCatalog component_catalog(const Graph& g);

struct FilterResult {
    bool pass = true;
    std::string reason;
};

// Necessary conditions only: max degree <= 4, bipartite, |E| <= 2n.
FilterResult grid_necessary_filter(const Graph& g);

/// Directed multigraph with arc multiplicities; loops allowed.
struct MultiDigraph {
    int n = 0;
    std::map<std::pair<int, int>, int> arcs;

    void add_arc(int u, int v, int count = 1);
    int multiplicity(int u, int v) const;
    int out_degree(int v) const;
    int in_degree(int v) const;
    int total_arcs() const;
};

// Merge u and v into a fresh vertex inheriting all arcs; u-v arcs become loops.
// The merged vertex gets id n-2 after compaction (ids above u,v shift down).
MultiDigraph join_vertices(const MultiDigraph& d, int u, int v);

}  // namespace gridbed
