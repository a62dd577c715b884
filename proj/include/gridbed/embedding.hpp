#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gridbed/graph.hpp"

namespace gridbed {

struct Cell {
    int row = 0;
    int col = 0;
    auto operator<=>(const Cell&) const = default;
};

/// Injective map vertex -> (row in [1,k], col in [1,r]).
struct GridEmbedding {
    int k = 0;
    int r = 0;
    std::map<int, Cell> pos;

    bool maps(int v) const { return pos.count(v) != 0; }
    Cell at(int v) const;
    void place(int v, Cell c) { pos[v] = c; }
};

struct Validation {
    bool ok = true;
    std::string reason;
};

// Valid iff injective, in-bounds, total on V(g), and every edge has grid distance 1.
Validation validate(const Graph& g, const GridEmbedding& f);

int grid_distance(const GridEmbedding& f, int u, int v);

struct DistanceReport {
    int a_f = 0;
    int witness_u = 0;
    int witness_v = 0;
};

// Exact max over all pairs of d(u,v) - d_f(u,v); g must be connected.
DistanceReport distance_approximation(const Graph& g, const GridEmbedding& f);

enum class Direction { up, down, right, left };

std::string to_string(Direction d);

// Direction from u to v; requires grid_distance(f,u,v) == 1.
Direction edge_direction(const GridEmbedding& f, int u, int v);

struct DirectionProfile {
    int up = 0;
    int down = 0;
    int left = 0;
    int right = 0;
};

DirectionProfile path_direction_profile(const GridEmbedding& f, const std::vector<int>& path);

// True iff a shift (a,b) aligns f_small with f_big and no vertex of f_big
// outside f_small's domain lands inside the shifted k'xr' window.
bool is_subgrid(const GridEmbedding& f_small, const GridEmbedding& f_big);

struct AgreeResult {
    bool ok = false;
    // Shift such that f1(u) = f2(u) + (row_shift, col_shift) on the overlap.
    int row_shift = 0;
    int col_shift = 0;
};

AgreeResult agrees(const GridEmbedding& f1, const GridEmbedding& f2);

// Composes four pairwise-agreeing embeddings sharing exactly the vertex set
// `shared`; output is renormalized to 1-based coordinates. Throws naming the
// first pair that fails to agree.
GridEmbedding glue(const GridEmbedding& f1, const GridEmbedding& f2, const GridEmbedding& f3,
                   const GridEmbedding& f4, const std::set<int>& shared);

// Shift all coordinates so that min row and min col become 1; k,r set to extents.
GridEmbedding normalized(const GridEmbedding& f);

}  // namespace gridbed
