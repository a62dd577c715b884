#include "gridbed/ilp.hpp"

#include <algorithm>

#include "gridbed/graph.hpp"

namespace gridbed {

namespace {

struct Box {
    std::vector<long long> lo, hi;
};

// Tightens the box against one constraint; returns false on a proven conflict.
bool propagate_one(const LinearConstraint& c, Box& box, bool* changed) {
    long long min_sum = 0, max_sum = 0;
    for (auto [v, a] : c.terms) {
        if (a >= 0) {
            min_sum += a * box.lo[v];
            max_sum += a * box.hi[v];
        } else {
            min_sum += a * box.hi[v];
            max_sum += a * box.lo[v];
        }
    }
    if (c.kind == LinearConstraint::Kind::eq) {
        if (c.rhs < min_sum || c.rhs > max_sum) return false;
    } else {
        if (max_sum < c.rhs) return false;
    }
    auto div_floor = [](long long x, long long y) {
        long long q = x / y, rem = x % y;
        return (rem != 0 && ((rem < 0) != (y < 0))) ? q - 1 : q;
    };
    auto div_ceil = [&](long long x, long long y) { return -div_floor(-x, y); };
    for (auto [v, a] : c.terms) {
        if (a == 0) continue;
        long long rest_min = min_sum - (a >= 0 ? a * box.lo[v] : a * box.hi[v]);
        long long rest_max = max_sum - (a >= 0 ? a * box.hi[v] : a * box.lo[v]);
        // a*x + rest = rhs (eq) or >= rhs (ge); bound x accordingly.
        long long new_lo = box.lo[v], new_hi = box.hi[v];
        if (c.kind == LinearConstraint::Kind::eq) {
            long long num_lo = c.rhs - rest_max, num_hi = c.rhs - rest_min;
            if (a > 0) {
                new_lo = std::max(box.lo[v], div_ceil(num_lo, a));
                new_hi = std::min(box.hi[v], div_floor(num_hi, a));
            } else {
                new_lo = std::max(box.lo[v], div_ceil(num_hi, a));
                new_hi = std::min(box.hi[v], div_floor(num_lo, a));
            }
        } else {  // sum >= rhs: a*x >= rhs - rest_max
            long long num = c.rhs - rest_max;
            if (a > 0) {
                new_lo = std::max(box.lo[v], div_ceil(num, a));
                new_hi = box.hi[v];
            } else {
                new_hi = std::min(box.hi[v], div_floor(num, a));
                new_lo = box.lo[v];
            }
        }
        if (new_lo > new_hi) return false;
        if (new_lo != box.lo[v] || new_hi != box.hi[v]) {
            box.lo[v] = new_lo;
            box.hi[v] = new_hi;
            *changed = true;
        }
    }
    return true;
}

bool propagate(const IlpSystem& sys, Box& box) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& c : sys.constraints)
            if (!propagate_one(c, box, &changed)) return false;
    }
    return true;
}

bool satisfied(const IlpSystem& sys, const std::vector<long long>& x) {
    for (const auto& c : sys.constraints) {
        long long s = 0;
        for (auto [v, a] : c.terms) s += a * x[v];
        if (c.kind == LinearConstraint::Kind::eq ? s != c.rhs : s < c.rhs) return false;
    }
    return true;
}

std::optional<std::vector<long long>> solve(const IlpSystem& sys, Box box) {
    if (!propagate(sys, box)) return std::nullopt;
    // Branch on the unfixed variable with the smallest range.
    int pick = -1;
    long long best_range = -1;
    for (int v = 0; v < sys.num_vars; ++v) {
        long long range = box.hi[v] - box.lo[v];
        if (range > 0 && (pick < 0 || range < best_range)) {
            pick = v;
            best_range = range;
        }
    }
    if (pick < 0) {
        std::vector<long long> x(box.lo);
        if (satisfied(sys, x)) return x;
        return std::nullopt;
    }
    for (long long val = box.lo[pick]; val <= box.hi[pick]; ++val) {
        Box child = box;
        child.lo[pick] = child.hi[pick] = val;
        if (auto r = solve(sys, std::move(child))) return r;
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::vector<long long>> ilp_feasible(const IlpSystem& sys) {
    if (static_cast<int>(sys.lower.size()) != sys.num_vars ||
        static_cast<int>(sys.upper.size()) != sys.num_vars)
        throw GridbedError("ilp: bounds size mismatch");
    for (int v = 0; v < sys.num_vars; ++v)
        if (sys.lower[v] > sys.upper[v]) return std::nullopt;
    Box box{sys.lower, sys.upper};
    return solve(sys, std::move(box));
}

}  // namespace gridbed
