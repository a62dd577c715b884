#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "gridbed/oracle.hpp"

namespace gridbed {

struct BucketPartition {
    int source = 0;                        // the guessed leftmost vertex v
    int width = 0;                         // k + a
    std::vector<std::vector<int>> buckets; // D_0 .. D_j by floor(d(v,u) / (k+a))
};

struct BucketReject {
    std::string reason;
};

// Algorithm 3's sorting step: buckets by floor(d/(k+a)), rejected when some
// distance exceeds the column bound or some bucket exceeds 2k(k+a).
std::optional<BucketPartition> bucketize(const Graph& g, int v, int k, int a, int r,
                                         BucketReject* reject = nullptr);

/// One compressed sweep state: the borrowed next-bucket subset plus the last
/// two column assignments of the band (vertex per row, -1 empty).
struct SweepState {
    std::vector<int> used;
    std::vector<int> right_col;
    std::vector<int> prev_col;
    auto operator<=>(const SweepState&) const = default;
};

// One iteration of the left-to-right block DP, with the compressed state
// semantics: returns exactly the (used, rightC, -1rightC) triples realizable
// by some k x (a+k) block embedding matching the glue column and the
// outward-neighbor condition. current_bucket/next_bucket index into part.
std::set<SweepState> sweep_iteration(const Graph& g, const BucketPartition& part, int k, int a,
                                     int r, int step, const std::set<SweepState>& previous,
                                     std::uint64_t budget = kDefaultBudget,
                                     bool* budget_hit = nullptr);

// Algorithm 3: yes iff some k x r embedding with a_f <= a exists. g connected.
// The solver runs the sweep on full-prefix states and gates acceptance on the
// assembled witness's actual distance approximation.
bool solve_with_a(const Graph& g, int k, int r, int a, std::uint64_t budget = kDefaultBudget,
                  bool* budget_hit = nullptr);

// Algorithm 4: iterate a upward; on yes the witness is replayed from the
// sweep's surviving prefix. achieved_a is the first successful a (= a_G), or
// |V| on no.
SolveResult solve_distance_fpt(const Graph& g, int k, int r,
                               std::uint64_t budget = kDefaultBudget);

}  // namespace gridbed
