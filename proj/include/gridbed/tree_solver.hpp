#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "gridbed/embedding.hpp"
#include "gridbed/oracle.hpp"

namespace gridbed {

/// Threshold constants of the tree algorithm; defaults are the paper's.
/// Tests run reduced values: soundness of yes answers is constant-independent
/// (every witness is validated end to end).
struct TreeSolveConstants {
    int c_split = 81;  // split threshold 81 a^2
    int c_win = 366;   // environment window (366 a^2 + 1)^2
    int c_env = 367;   // environment radius 367 a^2 + 1
    int c_ret = 6;     // retained path-group window 6 a
    int c_bud = 4;     // wrong-direction budget 4 a
    int variant_cap = 64;  // per-branch final states kept for composition
};

struct SplitClassification {
    enum class Kind { no_split, one_split, two_one_splits, double_split, too_many };
    Kind kind = Kind::no_split;
    int threshold = 0;
    std::vector<int> split_vertices;          // the one-/double-split vertices found
    std::vector<int> large_component_count;   // per vertex, components of size >= threshold
};

// Per-vertex large-component counts via rooted subtree sizes; throws on non-trees.
SplitClassification classify_splits(const Graph& tree, int threshold);

struct PtPath {
    std::vector<int> path;  // vertex sequence
    int radius = 0;
    std::vector<int> pc;  // vertex -> closest path vertex (ties to the earlier index)
};

// Marking procedure of the no-split case; nullopt when the marked set is not a
// path or the coverage radius fails (both certify split vertices exist).
std::optional<PtPath> find_pt_path(const Graph& tree, int t);

struct SweepSpec {
    std::set<Direction> allowed;  // at most one vertical, one horizontal
    int wrong_budget = 0;
    // Pre-placed environment with its reserved window: no other vertex may be
    // embedded inside [1..win_rows] x [1..win_cols] of the environment frame.
    GridEmbedding environment;
    int win_rows = 0, win_cols = 0;
    int k = 0, r = 0;
    int retained_groups = 1;
    std::uint64_t budget = kDefaultBudget;
};

struct SweepResult {
    std::vector<GridEmbedding> variants;  // full piece embeddings incl. environment
    bool truncated = false;               // capped or out of budget
};

// Direction-constrained left-to-right sweep along the (P,t)-path groups.
// Every returned variant realizes all edges of tree[part], respects the
// direction budget on P, keeps the environment as a subgrid and fits k x r.
SweepResult directional_sweep_embed(const Graph& tree, const std::vector<int>& part,
                                    const PtPath& p, const SweepSpec& spec, int variant_cap);

struct TreeSolveResult {
    SolveResult result;
    SplitClassification::Kind used_case = SplitClassification::Kind::no_split;
};

TreeSolveResult solve_tree(const Graph& tree, int k, int r,
                           std::uint64_t budget = kDefaultBudget,
                           const TreeSolveConstants& constants = {});

}  // namespace gridbed
