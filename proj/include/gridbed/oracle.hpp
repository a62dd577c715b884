#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "gridbed/embedding.hpp"
#include "gridbed/graph.hpp"

namespace gridbed {

enum class Answer { yes, no, unknown };

struct SolveStats {
    std::uint64_t nodes = 0;
};

struct SolveResult {
    Answer answer = Answer::unknown;
    std::optional<GridEmbedding> witness;
    SolveStats stats;
    int achieved_a = -1;
};

inline constexpr std::uint64_t kDefaultBudget = 50'000'000;

// Complete backtracking search for a k x r embedding. Vertices are tried in
// BFS order from a maximum-degree vertex per component; the first vertex is
// pinned to the upper-left quadrant (and above the diagonal when k == r), and
// isomorphic components are forced into row-major root order. Budget counts
// search nodes; exhausting it yields unknown, never a wrong yes/no.
SolveResult brute_force_embed(const Graph& g, int k, int r,
                              std::uint64_t budget = kDefaultBudget);

// Enumerates every complete embedding (modulo the symmetry quotient above)
// and calls visit on each; stops early when visit returns false or the budget
// runs out. Returns false iff the budget was exhausted.
bool enumerate_embeddings(const Graph& g, int k, int r, std::uint64_t budget,
                          const std::function<bool(const GridEmbedding&)>& visit);

// Unrestricted problem (k = r = n): each component is solved into an s_i x s_i
// box and the boxes are chained along the main diagonal.
SolveResult embed_components_diagonally(const Graph& g, std::uint64_t budget = kDefaultBudget);

// Polynomial caterpillar-forest packing; nullopt when some component is not a
// caterpillar. Spines go on one row, leaves alternate above/below, components
// are packed left to right with a one-column gap.
std::optional<SolveResult> embed_caterpillar_forest(const Graph& g, int k, int r);

struct MinAResult {
    Answer status = Answer::unknown;
    int value = -1;  // a_G(k,r); |V| when no embedding exists
};

// Minimum distance approximation over all k x r embeddings, by enumeration.
MinAResult min_distance_approximation(const Graph& g, int k, int r,
                                      std::uint64_t budget = kDefaultBudget);

}  // namespace gridbed
