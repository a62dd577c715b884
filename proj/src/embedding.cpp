#include "gridbed/embedding.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace gridbed {

Cell GridEmbedding::at(int v) const {
    auto it = pos.find(v);
    if (it == pos.end()) throw GridbedError("embedding: vertex " + std::to_string(v) + " unmapped");
    return it->second;
}

Validation validate(const Graph& g, const GridEmbedding& f) {
    if (static_cast<int>(f.pos.size()) != g.n)
        return {false, "not total: " + std::to_string(f.pos.size()) + " of " +
                           std::to_string(g.n) + " vertices mapped"};
    std::set<Cell> used;
    for (const auto& [v, c] : f.pos) {
        if (v < 0 || v >= g.n) return {false, "mapped vertex out of range"};
        if (c.row < 1 || c.row > f.k || c.col < 1 || c.col > f.r)
            return {false, "vertex " + std::to_string(v) + " out of bounds"};
        if (!used.insert(c).second)
            return {false, "cell (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                               ") used twice"};
    }
    for (auto [u, v] : g.edges) {
        if (grid_distance(f, u, v) != 1)
            return {false, "edge " + std::to_string(u) + "-" + std::to_string(v) +
                               " has grid distance != 1"};
    }
    return {true, ""};
}

int grid_distance(const GridEmbedding& f, int u, int v) {
    Cell a = f.at(u), b = f.at(v);
    return std::abs(a.row - b.row) + std::abs(a.col - b.col);
}

DistanceReport distance_approximation(const Graph& g, const GridEmbedding& f) {
    if (!is_connected(g)) throw GridbedError("distance_approximation: graph not connected");
    DistanceReport rep{0, 0, 0};
    if (g.n == 0) return rep;
    auto d = all_pairs_distances(g);
    int best = std::numeric_limits<int>::min();
    for (int u = 0; u < g.n; ++u) {
        for (int v = u; v < g.n; ++v) {
            int diff = d[u][v] - grid_distance(f, u, v);
            if (diff > best) {
                best = diff;
                rep.witness_u = u;
                rep.witness_v = v;
            }
        }
    }
    rep.a_f = best;
    return rep;
}

std::string to_string(Direction d) {
    switch (d) {
        case Direction::up: return "up";
        case Direction::down: return "down";
        case Direction::right: return "right";
        case Direction::left: return "left";
    }
    return "?";
}

Direction edge_direction(const GridEmbedding& f, int u, int v) {
    Cell a = f.at(u), b = f.at(v);
    if (std::abs(a.row - b.row) + std::abs(a.col - b.col) != 1)
        throw GridbedError("edge_direction: grid distance is not 1");
    if (b.row == a.row + 1) return Direction::up;
    if (b.row == a.row - 1) return Direction::down;
    if (b.col == a.col + 1) return Direction::right;
    return Direction::left;
}

DirectionProfile path_direction_profile(const GridEmbedding& f, const std::vector<int>& path) {
    DirectionProfile p;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        switch (edge_direction(f, path[i], path[i + 1])) {
            case Direction::up: ++p.up; break;
            case Direction::down: ++p.down; break;
            case Direction::right: ++p.right; break;
            case Direction::left: ++p.left; break;
        }
    }
    return p;
}

bool is_subgrid(const GridEmbedding& f_small, const GridEmbedding& f_big) {
    if (f_small.pos.empty()) return true;
    for (const auto& [v, c] : f_small.pos)
        if (!f_big.maps(v)) return false;
    auto first = f_small.pos.begin();
    Cell small0 = first->second;
    Cell big0 = f_big.at(first->first);
    int dr = small0.row - big0.row;
    int dc = small0.col - big0.col;
    for (const auto& [v, c] : f_small.pos) {
        Cell b = f_big.at(v);
        if (c.row != b.row + dr || c.col != b.col + dc) return false;
    }
    // No foreign vertex of f_big may occupy the shifted window.
    for (const auto& [v, b] : f_big.pos) {
        if (f_small.maps(v)) continue;
        int row = b.row + dr, col = b.col + dc;
        if (row >= 1 && row <= f_small.k && col >= 1 && col <= f_small.r) return false;
    }
    return true;
}

namespace {

bool collides_with_shift(const GridEmbedding& f1, const GridEmbedding& f2, int dr, int dc) {
    // Cells of f2 shifted into f1's frame must avoid cells of f1-exclusive vertices,
    // and vice versa (same condition seen from one side).
    std::set<Cell> cells1;
    for (const auto& [v, c] : f1.pos)
        if (!f2.maps(v)) cells1.insert(c);
    for (const auto& [v, c] : f2.pos) {
        if (f1.maps(v)) continue;
        Cell shifted{c.row + dr, c.col + dc};
        if (cells1.count(shifted)) return true;
    }
    return false;
}

}  // namespace

AgreeResult agrees(const GridEmbedding& f1, const GridEmbedding& f2) {
    std::vector<int> shared;
    for (const auto& [v, c] : f1.pos)
        if (f2.maps(v)) shared.push_back(v);

    if (!shared.empty()) {
        Cell a = f1.at(shared[0]), b = f2.at(shared[0]);
        int dr = a.row - b.row, dc = a.col - b.col;
        for (int v : shared) {
            Cell x = f1.at(v), y = f2.at(v);
            if (x.row != y.row + dr || x.col != y.col + dc) return {false, 0, 0};
        }
        if (collides_with_shift(f1, f2, dr, dc)) return {false, 0, 0};
        return {true, dr, dc};
    }

    // Empty overlap: the shift is not determined by the definition; scan the
    // bounding-box range for the lexicographically smallest non-colliding one.
    if (f1.pos.empty() || f2.pos.empty()) return {true, 0, 0};
    int r1min = std::numeric_limits<int>::max(), r1max = std::numeric_limits<int>::min();
    int c1min = r1min, c1max = r1max;
    for (const auto& [v, c] : f1.pos) {
        r1min = std::min(r1min, c.row), r1max = std::max(r1max, c.row);
        c1min = std::min(c1min, c.col), c1max = std::max(c1max, c.col);
    }
    int r2min = std::numeric_limits<int>::max(), r2max = std::numeric_limits<int>::min();
    int c2min = r2min, c2max = r2max;
    for (const auto& [v, c] : f2.pos) {
        r2min = std::min(r2min, c.row), r2max = std::max(r2max, c.row);
        c2min = std::min(c2min, c.col), c2max = std::max(c2max, c.col);
    }
    for (int dr = r1min - r2max - 1; dr <= r1max - r2min + 1; ++dr)
        for (int dc = c1min - c2max - 1; dc <= c1max - c2min + 1; ++dc)
            if (!collides_with_shift(f1, f2, dr, dc)) return {true, dr, dc};
    return {false, 0, 0};
}

GridEmbedding normalized(const GridEmbedding& f) {
    GridEmbedding out;
    if (f.pos.empty()) {
        out.k = f.k;
        out.r = f.r;
        return out;
    }
    int rmin = std::numeric_limits<int>::max(), cmin = rmin;
    int rmax = std::numeric_limits<int>::min(), cmax = rmax;
    for (const auto& [v, c] : f.pos) {
        rmin = std::min(rmin, c.row), rmax = std::max(rmax, c.row);
        cmin = std::min(cmin, c.col), cmax = std::max(cmax, c.col);
    }
    out.k = rmax - rmin + 1;
    out.r = cmax - cmin + 1;
    for (const auto& [v, c] : f.pos) out.pos[v] = {c.row - rmin + 1, c.col - cmin + 1};
    return out;
}

GridEmbedding glue(const GridEmbedding& f1, const GridEmbedding& f2, const GridEmbedding& f3,
                   const GridEmbedding& f4, const std::set<int>& shared) {
    const GridEmbedding* fs[4] = {&f1, &f2, &f3, &f4};
    if (shared.empty()) throw GridbedError("glue: shared vertex set must be nonempty");
    for (int i = 0; i < 4; ++i)
        for (int v : shared)
            if (!fs[i]->maps(v))
                throw GridbedError("glue: piece " + std::to_string(i + 1) +
                                   " does not map shared vertex " + std::to_string(v));
    // Pieces may overlap only in `shared`.
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (const auto& [v, c] : fs[i]->pos)
                if (fs[j]->maps(v) && !shared.count(v))
                    throw GridbedError("glue: pieces " + std::to_string(i + 1) + " and " +
                                       std::to_string(j + 1) + " share non-shared vertex " +
                                       std::to_string(v));
    int dr[4] = {0, 0, 0, 0}, dc[4] = {0, 0, 0, 0};
    for (int i = 1; i < 4; ++i) {
        AgreeResult a = agrees(f1, *fs[i]);
        if (!a.ok)
            throw GridbedError("glue: pieces 1 and " + std::to_string(i + 1) + " do not agree");
        dr[i] = a.row_shift;
        dc[i] = a.col_shift;
    }
    for (int i = 1; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            AgreeResult a = agrees(*fs[i], *fs[j]);
            if (!a.ok)
                throw GridbedError("glue: pieces " + std::to_string(i + 1) + " and " +
                                   std::to_string(j + 1) + " do not agree");
        }
    GridEmbedding merged;
    std::set<Cell> used;
    for (int i = 0; i < 4; ++i) {
        for (const auto& [v, c] : fs[i]->pos) {
            Cell shifted{c.row + dr[i], c.col + dc[i]};
            if (merged.maps(v)) {
                if (!(merged.at(v) == shifted))
                    throw GridbedError("glue: inconsistent placement of vertex " +
                                       std::to_string(v));
                continue;
            }
            if (used.count(shifted))
                throw GridbedError("glue: cell collision while merging piece " +
                                   std::to_string(i + 1));
            used.insert(shifted);
            merged.place(v, shifted);
        }
    }
    return normalized(merged);
}

}  // namespace gridbed
