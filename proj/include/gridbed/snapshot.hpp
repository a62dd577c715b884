#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "gridbed/graph.hpp"
#include "gridbed/ilp.hpp"
#include "gridbed/oracle.hpp"

namespace gridbed {

struct BlockPlan {
    int p = 0;                // number of blocks
    std::vector<int> widths;  // per-block column counts; consecutive blocks share one column
};

// Partition of the k x r lattice into blocks of width mcc sharing one column,
// the last block possibly shorter. Requires mcc >= 2 and r >= 2.
BlockPlan block_plan(int r, int mcc);

/// Positioned subgraph of a k x w lattice: occupied cells plus realized edges.
/// Identity is positional (exact cells and edges), not up to isomorphism.
struct Snapshot {
    int k = 0, w = 0;
    std::uint64_t cells = 0;                 // bitmask, cell index = row * w + col (0-based)
    std::vector<std::pair<int, int>> edges;  // cell-index pairs, a < b, sorted

    bool occupied(int row, int col) const { return (cells >> (row * w + col)) & 1; }
    auto operator<=>(const Snapshot&) const = default;
};

struct ColumnSignature {
    std::uint32_t cells = 0;   // row bitmask
    std::uint32_t vedges = 0;  // bit i set: vertical edge between rows i and i+1
    auto operator<=>(const ColumnSignature&) const = default;
};

struct SnapshotInfo {
    Snapshot snap;
    bool source_ok = false;  // LC(S) subset of Comp(G)
    bool sink_ok = false;    // RC(S) subset of Comp(G)
    std::vector<int> freq_cen;    // per catalog class, FC component count
    std::vector<int> freq_left;   // per class, LC count (meaningful when source_ok)
    std::vector<int> freq_right;  // per class, RC count (meaningful when sink_ok)
    ColumnSignature left_sig, right_sig;
};

struct SnapshotSet {
    int k = 0, w = 0;
    std::vector<SnapshotInfo> infos;
    bool complete = true;  // false when the enumeration budget ran out
};

// All subgraphs of the k x w lattice whose fully-contained components are
// isomorphic to catalog classes, with Source/Sink flags and freq tables.
// component_cap, when positive, drops snapshots containing any component with
// more cells than the cap (a solver-side refinement; the default enumerates
// the full set).
SnapshotSet enumerate_snapshots(int k, int w, const ComponentCatalog& catalog,
                                std::uint64_t budget = kDefaultBudget, int component_cap = 0);

struct AdjacencyEntry {
    int left = 0;   // index into the left snapshot set
    int right = 0;  // index into the right snapshot set
    std::vector<int> boundary_freq;  // per class, crossing components touching neither outer column
};

// Adjacency between snapshots of width w (left) and width w_right (right):
// pairs whose shared column matches cell-for-cell and edge-for-edge and whose
// components crossing the shared column are all catalog classes.
std::vector<AdjacencyEntry> compute_adjacency(const SnapshotSet& left, const SnapshotSet& right,
                                              const ComponentCatalog& catalog);

struct BlockDigraph {
    // Vertex 0 = start, vertex 1 = end, vertices 2.. = chosen middle snapshots.
    int num_vertices = 0;
    std::vector<int> middle;  // snapshot indices of vertices 2..
    int start_index = 0, end_index = 0;
    struct Arc {
        int from = 0, to = 0;
        std::vector<int> boundary_freq;
    };
    std::vector<Arc> arcs;
};

BlockDigraph build_digraph(int start_index, int end_index, const std::vector<int>& chosen,
                           const std::vector<AdjacencyEntry>& mid_adj,
                           const std::vector<AdjacencyEntry>& end_adj);

// All spanning trees of an undirected simple graph, as sorted edge lists,
// enumerated by contraction-deletion. Empty when the graph is disconnected.
std::vector<std::vector<std::pair<int, int>>> enumerate_spanning_trees(
    int n, const std::vector<std::pair<int, int>>& edges);

// Eulerian start-to-end path of a multidigraph using every arc exactly its
// multiplicity; nullopt if none exists.
std::optional<std::vector<int>> eulerian_path(const MultiDigraph& d, int start, int end);

/// Everything the ILP audit needs to re-check Eqs. (1a)-(1g) literally.
struct IlpCertificate {
    BlockDigraph digraph;
    std::vector<std::pair<int, int>> tree;  // spanning tree edges (vertex pairs)
    std::vector<long long> flow;            // per arc of digraph.arcs
    int p = 0;
    int start_snapshot = 0, end_snapshot = 0;
    std::vector<int> num;  // num(G_i) per class
    std::vector<int> freq_left_start, freq_right_end;
    std::vector<std::vector<int>> freq_cen_middle;  // per digraph vertex (incl. start/end)
};

struct MccSolveResult {
    SolveResult result;
    std::optional<IlpCertificate> certificate;  // present on yes via the ILP route
};

// Theorem 1.1 solver: FPT in mcc + k.
MccSolveResult solve_mcc_k(const Graph& g, int k, int r, std::uint64_t budget = kDefaultBudget);

}  // namespace gridbed
