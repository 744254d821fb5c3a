#include "cde/oracle.hpp"

#include <functional>
#include <numeric>
#include <string>

#include "cde/errors.hpp"

namespace cde::oracle {

namespace {

void check_enumeration_budget(const Instance& inst) {
    if (inst.n > 10 || inst.k > 16)
        raise(Errc::TooLarge, "exhaustive search limited to N <= 10, K <= 16 (got N = " + std::to_string(inst.n) +
                                  ", K = " + std::to_string(inst.k) + ")");
}

std::vector<std::size_t> all_nodes(const Instance& inst) {
    std::vector<std::size_t> nodes(inst.n);
    std::iota(nodes.begin(), nodes.end(), std::size_t{0});
    return nodes;
}

// Visits every rate vector with the given sum in lexicographic order,
// respecting per-node upper bounds. The visitor returns false to stop.
void for_each_composition(const std::vector<std::size_t>& upper, std::size_t sum,
                          const std::function<bool(const std::vector<std::size_t>&)>& visit) {
    const std::size_t n = upper.size();
    std::vector<std::size_t> suffix_cap(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) suffix_cap[i] = suffix_cap[i + 1] + upper[i];
    std::vector<std::size_t> r(n, 0);
    bool stop = false;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (stop) return;
        if (i + 1 == n) {
            if (left <= upper[i]) {
                r[i] = left;
                if (!visit(r)) stop = true;
            }
            return;
        }
        // Whatever this node leaves must fit under the remaining caps.
        const std::size_t lo = left > suffix_cap[i + 1] ? left - suffix_cap[i + 1] : 0;
        const std::size_t hi = std::min(upper[i], left);
        for (std::size_t v = lo; v <= hi && !stop; ++v) {
            r[i] = v;
            rec(i + 1, left - v);
        }
    };
    if (n == 0) {
        if (sum == 0) visit(r);
        return;
    }
    if (suffix_cap[0] < sum) return;
    rec(0, sum);
}

// Per-node cap implied by the single-node constraint I = {i}:
// sum - r_i >= |X_i^c|. Returns nullopt when some node makes `sum` infeasible.
std::optional<std::vector<std::size_t>> single_node_caps(const Instance& inst, std::size_t sum) {
    std::vector<std::size_t> upper(inst.n);
    for (std::size_t i = 0; i < inst.n; ++i) {
        const std::size_t missing = inst.k - inst.rows[i].weight();
        if (inst.n > 1 && missing > sum) return std::nullopt;
        upper[i] = std::min(inst.n > 1 ? sum - missing : sum, inst.k);
    }
    return upper;
}

}  // namespace

ConstraintSet ConstraintSet::build(const Instance& inst, const std::vector<std::size_t>& nodes) {
    if (nodes.size() > 16) raise(Errc::TooLarge, "constraint enumeration limited to 16 nodes");
    ConstraintSet cs;
    cs.n = nodes.size();
    const std::size_t full = std::size_t{1} << cs.n;
    const BitVector universe = inst.packets_of(nodes);
    const std::size_t universe_size = universe.weight();
    cs.missing.assign(full, 0);
    std::vector<BitVector> held(full, BitVector(inst.k));
    for (std::size_t mask = 1; mask < full; ++mask) {
        const auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
        held[mask] = held[mask & (mask - 1)] | inst.rows[nodes[low]];
        cs.missing[mask] = universe_size - held[mask].weight();
    }
    return cs;
}

ConstraintSet ConstraintSet::build(const Instance& inst) { return build(inst, all_nodes(inst)); }

bool ConstraintSet::satisfied_by(const std::vector<std::size_t>& rates) const {
    const std::size_t full = std::size_t{1} << n;
    std::vector<std::size_t> sums(full, 0);
    for (std::size_t mask = 1; mask < full; ++mask) {
        const auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
        sums[mask] = sums[mask & (mask - 1)] + rates[low];
    }
    for (std::size_t mask = 1; mask + 1 < full; ++mask)
        if (sums[(full - 1) ^ mask] < missing[mask]) return false;
    return true;
}

bool feasible(const Instance& inst, const RateVector& r) {
    if (r.size() != inst.n) raise(Errc::DimensionMismatch, "rate vector length does not match N");
    return ConstraintSet::build(inst).satisfied_by(r.rates);
}

bool feasible_local(const Instance& inst, const std::vector<std::size_t>& nodes, const RateVector& r) {
    if (r.size() != inst.n) raise(Errc::DimensionMismatch, "rate vector length does not match N");
    const auto cs = ConstraintSet::build(inst, nodes);
    std::vector<std::size_t> local;
    for (auto i : nodes) local.push_back(r[i]);
    return cs.satisfied_by(local);
}

SumRateResult min_sum_rate(const Instance& inst) {
    check_enumeration_budget(inst);
    const auto cs = ConstraintSet::build(inst);
    for (std::size_t sum = 0; sum <= inst.k; ++sum) {
        const auto upper = single_node_caps(inst, sum);
        if (!upper) continue;
        std::optional<std::vector<std::size_t>> hit;
        for_each_composition(*upper, sum, [&](const std::vector<std::size_t>& r) {
            if (!cs.satisfied_by(r)) return true;
            hit = r;
            return false;
        });
        if (hit) return {sum, RateVector(*hit)};
    }
    // Sending every packet once is always feasible, so this is unreachable
    // for a valid instance.
    raise(Errc::InvalidInstance, "no feasible rate vector with sum <= K");
}

std::optional<KappaEntry> kappa(const Instance& inst, std::size_t r) {
    check_enumeration_budget(inst);
    const auto cs = ConstraintSet::build(inst);
    const auto upper = single_node_caps(inst, r);
    if (!upper) return std::nullopt;
    const std::vector<Weight> weights = inst.weights.value_or(std::vector<Weight>{});
    std::optional<KappaEntry> best;
    for_each_composition(*upper, r, [&](const std::vector<std::size_t>& rates) {
        if (!cs.satisfied_by(rates)) return true;
        RateVector rv(rates);
        const Weight c = cost(weights, rv);
        if (!best || c < best->cost) best = KappaEntry{r, c, std::move(rv)};
        return true;
    });
    return best;
}

WeightedResult min_weighted_cost(const Instance& inst) {
    const auto base = min_sum_rate(inst);
    WeightedResult out;
    for (std::size_t r = base.r_min; r <= inst.k; ++r) {
        auto entry = kappa(inst, r);
        if (!entry) continue;
        if (out.kappa.empty() || entry->cost < out.cost) {
            out.cost = entry->cost;
            out.witness = entry->witness;
            out.r = r;
        }
        out.kappa.push_back(std::move(*entry));
    }
    return out;
}

}  // namespace cde::oracle
