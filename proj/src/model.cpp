#include "cde/model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cde/errors.hpp"

namespace cde {

Instance Instance::from_matrix(const std::vector<std::vector<int>>& matrix) {
    Instance inst;
    inst.n = matrix.size();
    inst.k = matrix.empty() ? 0 : matrix.front().size();
    for (const auto& row : matrix) inst.rows.push_back(BitVector::from_bits(row));
    return inst;
}

std::size_t Instance::min_packets() const {
    std::size_t m = k;
    for (const auto& r : rows) m = std::min(m, r.weight());
    return m;
}

BitVector Instance::packets_of(const std::vector<std::size_t>& nodes) const {
    BitVector u(k);
    for (auto i : nodes) u |= rows[i];
    return u;
}

std::size_t Instance::holders(std::size_t packet) const {
    std::size_t c = 0;
    for (const auto& r : rows) c += r.test(packet) ? 1 : 0;
    return c;
}

bool Instance::canonical() const {
    for (std::size_t j = 0; j < k; ++j) {
        const auto h = holders(j);
        if (h < 2 || h + 1 > n) return false;
    }
    return true;
}

SubInstance restrict_instance(const Instance& inst, const std::vector<std::size_t>& nodes,
                              const BitVector& columns) {
    SubInstance sub;
    sub.node_map = nodes;
    sub.column_map = columns.positions();
    sub.instance.n = nodes.size();
    sub.instance.k = sub.column_map.size();
    for (auto i : nodes) {
        BitVector row(sub.instance.k);
        for (std::size_t c = 0; c < sub.column_map.size(); ++c)
            if (inst.rows[i].test(sub.column_map[c])) row.set(c);
        sub.instance.rows.push_back(std::move(row));
    }
    if (inst.weights) {
        std::vector<Weight> w;
        for (auto i : nodes) w.push_back((*inst.weights)[i]);
        sub.instance.weights = std::move(w);
    }
    return sub;
}

std::vector<std::string> validate(const Instance& inst) {
    std::vector<std::string> out;
    if (inst.n == 0) out.emplace_back("instance has no nodes");
    if (inst.k == 0) out.emplace_back("instance has no packets");
    if (inst.rows.size() != inst.n)
        out.push_back("expected " + std::to_string(inst.n) + " rows, got " + std::to_string(inst.rows.size()));
    bool widths_ok = true;
    for (std::size_t i = 0; i < inst.rows.size(); ++i) {
        if (inst.rows[i].width() != inst.k) {
            out.push_back("row " + std::to_string(i + 1) + " has " + std::to_string(inst.rows[i].width()) +
                          " entries, expected " + std::to_string(inst.k));
            widths_ok = false;
        }
    }
    if (widths_ok && inst.rows.size() == inst.n) {
        for (std::size_t j = 0; j < inst.k; ++j)
            if (inst.holders(j) == 0) out.push_back("packet " + std::to_string(j + 1) + " available nowhere");
    }
    if (inst.weights) {
        if (inst.weights->size() != inst.n)
            out.push_back("expected " + std::to_string(inst.n) + " weights, got " +
                          std::to_string(inst.weights->size()));
        for (std::size_t i = 0; i < inst.weights->size(); ++i)
            if ((*inst.weights)[i] <= 0) out.push_back("weight of node " + std::to_string(i + 1) + " is not positive");
    }
    if (inst.groups) {
        std::vector<int> seen(inst.n, 0);
        bool partition = true;
        for (const auto& g : *inst.groups) {
            if (g.empty()) partition = false;
            for (auto node : g) {
                if (node >= inst.n) {
                    out.push_back("group member " + std::to_string(node + 1) + " is not a node");
                    partition = false;
                } else {
                    ++seen[node];
                }
            }
        }
        for (int s : seen)
            if (s != 1) partition = false;
        if (!partition) out.emplace_back("groups are not a partition of the nodes");
    }
    return out;
}

void require_valid(const Instance& inst) {
    const auto problems = validate(inst);
    if (problems.empty()) return;
    std::ostringstream os;
    for (std::size_t i = 0; i < problems.size(); ++i) os << (i ? "; " : "") << problems[i];
    raise(Errc::InvalidInstance, os.str());
}

std::pair<Instance, NormalizationReport> normalize(const Instance& inst) {
    require_valid(inst);
    NormalizationReport report;
    BitVector keep(inst.k);
    for (std::size_t j = 0; j < inst.k; ++j) {
        const auto h = inst.holders(j);
        if (h == inst.n) {
            report.removed_universal.push_back(j);
        } else if (h == 1) {
            for (std::size_t i = 0; i < inst.n; ++i)
                if (inst.rows[i].test(j)) report.singleton_forced.push_back({i, j});
        } else {
            keep.set(j);
        }
    }
    std::vector<std::size_t> all(inst.n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    auto sub = restrict_instance(inst, all, keep);
    sub.instance.groups = inst.groups;
    report.column_map = std::move(sub.column_map);
    return {std::move(sub.instance), std::move(report)};
}

Weight cost(const std::vector<Weight>& weights, const RateVector& r) {
    Weight total = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
        total += (weights.empty() ? Weight(1) : weights[i]) * static_cast<std::int64_t>(r[i]);
    return total;
}

std::vector<std::size_t> weight_order(const Instance& inst) {
    std::vector<std::size_t> order(inst.n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (inst.weights) {
        const auto& w = *inst.weights;
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return w[a] < w[b]; });
    }
    return order;
}

}  // namespace cde
