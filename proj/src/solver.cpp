#include "cde/solver.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "cde/errors.hpp"

namespace cde {

namespace {

struct Probe {
    std::size_t d = 0;
    SdbFound found;
};

std::vector<std::size_t> identity_order(std::size_t n) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    return order;
}

// Largest feasible d in [0, d_max]: probe d_max, then 1, then bisect.
Probe capped_search(const Instance& inst, std::size_t d_max) {
    if (d_max > 0) {
        if (auto top = sdb(inst, d_max)) return {d_max, std::move(*top)};
        if (d_max > 1) {
            if (auto low = sdb(inst, 1)) {
                Probe best{1, std::move(*low)};
                std::size_t lo = 1, hi = d_max;
                while (hi - lo > 1) {
                    const std::size_t d = (lo + hi) / 2;
                    if (auto f = sdb(inst, d)) {
                        lo = d;
                        best = {d, std::move(*f)};
                    } else {
                        hi = d;
                    }
                }
                return best;
            }
        }
    }
    return {0, std::move(*sdb(inst, 0))};
}

void require_canonical(const Instance& inst) {
    require_valid(inst);
    if (!inst.canonical())
        raise(Errc::InvalidInstance, "instance is not canonical (a packet is held by one node or by all nodes)");
}

void require_weights(const Instance& inst) {
    if (!inst.weights) raise(Errc::MissingWeights, "instance has no weights");
}

Weight weighted_cost(const Instance& inst, const RateVector& r) { return cost(*inst.weights, r); }

// Maps sub-instance basis vectors and rates back to the parent.
BasisSet lift_basis(const BasisSet& b, const SubInstance& sub, std::size_t k) {
    BasisSet out{b.d, {}, {}};
    for (std::size_t i = 0; i < b.size(); ++i) {
        BitVector v(k);
        for (auto p : b.vectors[i].positions()) v.set(sub.column_map[p]);
        out.vectors.push_back(std::move(v));
        out.provenance.push_back(sub.node_map[b.provenance[i]]);
    }
    return out;
}

// Extends `rows` to target size with candidates of the round's nodes, keeping
// the subset condition at d. Returns the number of rows added per node.
std::optional<std::vector<std::size_t>> extend_rows(const Instance& inst, const std::vector<std::size_t>& nodes,
                                                    const BitVector& columns, std::size_t d, std::size_t target,
                                                    BasisSet& rows) {
    std::vector<std::size_t> added(inst.n, 0);
    for (auto node : nodes) {
        if (rows.size() >= target) break;
        const BitVector local = inst.rows[node] & columns;
        if (local.weight() <= d) continue;
        for (auto& b : candidates(local, d)) {
            if (rows.size() >= target) break;
            rows.vectors.push_back(b);
            if (basis_condition(rows.vectors, d)) {
                rows.provenance.push_back(node);
                ++added[node];
            } else {
                rows.vectors.pop_back();
            }
        }
    }
    if (rows.size() < target) return std::nullopt;
    return added;
}

}  // namespace

SolveResult solve(const Instance& inst) {
    auto [norm, report] = normalize(inst);
    SolveResult res;
    res.rate = RateVector(inst.n);
    if (norm.k == 0) {
        res.basis = BasisSet{0, {}, {}};
    } else {
        std::size_t heaviest = 0;
        for (const auto& row : norm.rows) heaviest = std::max(heaviest, row.weight());
        const std::size_t d_max = std::min(norm.min_packets(), heaviest == 0 ? 0 : heaviest - 1);
        auto probe = capped_search(norm, d_max);
        res.d_star = probe.d;
        res.rate = probe.found.rate;
        res.basis = std::move(probe.found.basis);
    }
    res.R_star = norm.k - std::min(norm.min_packets(), res.d_star) + report.singleton_forced.size();
    for (const auto& f : report.singleton_forced) ++res.rate[f.node];
    res.normalized = std::move(norm);
    res.normalization = std::move(report);
    return res;
}

std::optional<KappaResult> kappa(const Instance& inst, std::size_t R) {
    require_weights(inst);
    require_canonical(inst);
    if (R > inst.k)
        raise(Errc::DimensionMismatch, "R = " + std::to_string(R) + " exceeds K = " + std::to_string(inst.k));
    const std::size_t d = inst.k - R;
    if (d > inst.min_packets()) return std::nullopt;
    const auto order = weight_order(inst);
    auto f = sdb(inst, d, order);
    if (!f) return std::nullopt;
    return KappaResult{weighted_cost(inst, f->rate), f->rate, std::move(f->basis)};
}

WeightedResult solve_weighted(const Instance& inst) {
    require_weights(inst);
    require_canonical(inst);
    const auto order = weight_order(inst);
    std::map<std::size_t, std::optional<SdbFound>> memo;
    auto probe = [&](std::size_t d) -> const std::optional<SdbFound>& {
        auto it = memo.find(d);
        if (it == memo.end()) it = memo.emplace(d, sdb(inst, d, order)).first;
        return it->second;
    };

    std::size_t d_start = 0;
    std::size_t d_end = inst.min_packets();
    while (d_start < d_end) {
        const std::size_t d = std::max((d_start + d_end) / 2, d_start + 1);
        const auto& f = probe(d);
        if (!f) {
            d_end = d - 1;
            continue;
        }
        const auto& fh = probe(d - 1);
        if (fh && weighted_cost(inst, f->rate) > weighted_cost(inst, fh->rate))
            d_end = d - 1;
        else
            d_start = d;
    }
    const auto& best = probe(d_start);
    return WeightedResult{weighted_cost(inst, best->rate), best->rate, best->basis, inst.k - d_start};
}

SloResult solve_slo(const Instance& inst) {
    require_valid(inst);
    if (!inst.groups) raise(Errc::MissingGroups, "instance has no groups");

    SloResult out;
    std::vector<std::size_t> nodes;
    std::size_t d_prev = inst.k;
    BasisSet rows{0, {}, {}};
    RateVector rate(inst.n);

    for (const auto& group : *inst.groups) {
        nodes.insert(nodes.end(), group.begin(), group.end());
        std::sort(nodes.begin(), nodes.end());

        SloRound round;
        round.nodes = nodes;
        round.columns = inst.packets_of(nodes);
        const auto sub = restrict_instance(inst, nodes, round.columns);
        round.K_i = sub.instance.k;
        round.M_i = sub.instance.min_packets();

        auto probe = capped_search(sub.instance, std::min(round.M_i, d_prev));
        round.d_star = probe.d;
        const std::size_t target = round.K_i - round.d_star;

        if (out.rounds.empty()) {
            rows = lift_basis(probe.found.basis, sub, inst.k);
            for (std::size_t j = 0; j < sub.node_map.size(); ++j) rate[sub.node_map[j]] += probe.found.rate[j];
        } else {
            rows.d = round.d_star;
            auto added = extend_rows(inst, nodes, round.columns, round.d_star, target, rows);
            if (!added)
                raise(Errc::ConstructionFailed, "round " + std::to_string(out.rounds.size() + 1) +
                                                    ": earlier transmissions cannot be extended to " +
                                                    std::to_string(target) + " rows at d = " +
                                                    std::to_string(round.d_star));
            for (std::size_t j = 0; j < inst.n; ++j) rate[j] += (*added)[j];
        }
        rows.d = round.d_star;
        round.R_star = target;
        round.rate = rate;
        round.basis = rows;
        d_prev = round.d_star;
        out.rounds.push_back(std::move(round));
    }
    return out;
}

}  // namespace cde
