#pragma once

#include <optional>
#include <vector>

namespace gridbed {

struct LinearConstraint {
    enum class Kind { eq, ge };  // sum(terms) == rhs / sum(terms) >= rhs
    Kind kind = Kind::eq;
    std::vector<std::pair<int, int>> terms;  // (variable, coefficient)
    long long rhs = 0;
};

/// Bounded-box integer feasibility system; one variable per arc in the
/// snapshot solver's use, with per-variable bounds.
struct IlpSystem {
    int num_vars = 0;
    std::vector<long long> lower;  // per-variable lower bounds
    std::vector<long long> upper;  // per-variable upper bounds
    std::vector<LinearConstraint> constraints;
};

// Depth-first search with interval propagation over the bounded box;
// infeasible only after exhausting it. Deterministic.
std::optional<std::vector<long long>> ilp_feasible(const IlpSystem& sys);

}  // namespace gridbed
