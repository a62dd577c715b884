#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridbed/embedding.hpp"
#include "gridbed/graph.hpp"
#include "gridbed/oracle.hpp"
#include "gridbed/snapshot.hpp"

namespace gridbed {

struct CnfFormula {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;  // signed 1-based literals
    bool nae = false;

    void check() const;  // no empty clause, literals in range
};

struct BatteriesInstance {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, int>>> cells;  // (x1, x2) per cell

    void check() const;
};

struct Placement {
    // p[i][j] true = '+', false = '-'.
    std::vector<std::vector<bool>> p;
};

struct PlacementCheck {
    bool correct = false;
    bool safe = false;
};

BatteriesInstance reduce_sat_to_batteries(const CnfFormula& pi);

PlacementCheck placement_check(const BatteriesInstance& b, const Placement& p);

struct BatteriesAnswer {
    Answer answer = Answer::unknown;
    std::optional<Placement> witness;
};

// 2^c column-sign enumeration (Lemma oneDirection); unknown when c > 20.
BatteriesAnswer batteries_brute_force(const BatteriesInstance& b);

struct LabeledGraph {
    Graph graph;
    std::vector<std::string> labels;  // per dense vertex id
    int label_id(const std::string& label) const;
};

struct GridFrame {
    Graph graph;
    std::vector<Cell> coords;  // canonical witness position per vertex (paper 0-based)
};

GridFrame grid_frame(int m, int n);

// The batteries-to-grid reduction G_B with deterministic role labels.
LabeledGraph reduce_batteries_to_grid(const BatteriesInstance& b);

// Canonical witness for a correct & safe placement; throws otherwise.
GridEmbedding construct_batteries_witness(const BatteriesInstance& b, const Placement& p);

struct ThreePartitionInstance {
    std::vector<long long> weights;  // 3m integers
    bool normalized = false;         // caller certifies the only-triples property
};

struct ThreePartitionOutput {
    Graph graph;
    int k = 3;
    long long r = 0;
    long long target = 0;                  // B after normalization
    std::vector<long long> norm_weights;   // weights used in the construction
};

ThreePartitionOutput reduce_3partition(const ThreePartitionInstance& inst);

// partition: m triples of indices into the weight list; each must sum to B.
GridEmbedding construct_3partition_witness(const ThreePartitionInstance& inst,
                                           const std::vector<std::array<int, 3>>& partition);

struct NaesatOutput {
    Graph graph;
    std::vector<std::string> labels;
    int label_id(const std::string& label) const;
};

NaesatOutput reduce_naesat(const CnfFormula& pi);

// alpha[i] = truth value of variable i+1; must NAE-satisfy every clause.
GridEmbedding construct_naesat_witness(const CnfFormula& pi, const std::vector<bool>& alpha);

struct RectPlacement {
    int index = 0;
    int row = 0, col = 0;  // 1-based top-left in the solved strip
    bool rotated = false;
};

struct StripPackResult {
    Answer answer = Answer::unknown;
    std::vector<RectPlacement> placements;
    bool doubled = false;  // the x2 transform was applied
};

// Corollary 1.2 adapter: rectangles as solid grid graphs, dispatched to
// solve_mcc_k; dimensions doubled when some rectangle has a unit side.
StripPackResult strip_pack(const std::vector<std::pair<int, int>>& rects, int k, int w_strip,
                           std::uint64_t budget = kDefaultBudget);

}  // namespace gridbed
