#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cde/model.hpp"

namespace cde::oracle {

/// Cut-set lower bounds: for every nonempty proper node subset I (bitmask),
/// the nodes outside I must send at least |packets missing from all of I|.
struct ConstraintSet {
    std::size_t n = 0;
    std::vector<std::size_t> missing;  // indexed by mask; entries 0 and 2^n-1 unused

    /// Restricted to `nodes` and the packets they jointly hold. Throws TooLarge for N > 16.
    static ConstraintSet build(const Instance& inst, const std::vector<std::size_t>& nodes);
    static ConstraintSet build(const Instance& inst);

    bool satisfied_by(const std::vector<std::size_t>& rates) const;
};

/// Checks every Slepian-Wolf constraint. Throws TooLarge for N > 16.
bool feasible(const Instance& inst, const RateVector& r);

/// Local omniscience of `nodes`: constraints over subsets of `nodes` against
/// the packets those nodes jointly hold. Rates outside `nodes` are ignored.
bool feasible_local(const Instance& inst, const std::vector<std::size_t>& nodes, const RateVector& r);

struct SumRateResult {
    std::size_t r_min = 0;
    RateVector witness;  // lexicographically least with sum r_min
};

/// Exhaustive minimum of the sum rate. Requires N <= 10 and K <= 16.
SumRateResult min_sum_rate(const Instance& inst);

struct KappaEntry {
    std::size_t r = 0;
    Weight cost;
    RateVector witness;
};

struct WeightedResult {
    Weight cost;
    RateVector witness;
    std::size_t r = 0;
    std::vector<KappaEntry> kappa;  // one entry per sum rate R_min..K
};

/// Exhaustive minimum weighted cost plus the per-sum-rate minima. Uses unit
/// weights when the instance has none. Requires N <= 10 and K <= 16.
WeightedResult min_weighted_cost(const Instance& inst);

/// Minimum weighted cost among feasible vectors with sum exactly r, or nullopt.
std::optional<KappaEntry> kappa(const Instance& inst, std::size_t r);

}  // namespace cde::oracle
