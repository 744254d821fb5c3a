#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "cde/bitvector.hpp"

namespace cde {

/// Exact per-transmission cost.
using Weight = boost::rational<std::int64_t>;

using NodeGroups = std::vector<std::vector<std::size_t>>;

/// Transmissions per node.
struct RateVector {
    std::vector<std::size_t> rates;

    RateVector() = default;
    explicit RateVector(std::size_t n) : rates(n, 0) {}
    explicit RateVector(std::vector<std::size_t> r) : rates(std::move(r)) {}

    std::size_t size() const noexcept { return rates.size(); }
    std::size_t sum() const noexcept {
        std::size_t s = 0;
        for (auto r : rates) s += r;
        return s;
    }
    std::size_t& operator[](std::size_t i) { return rates[i]; }
    std::size_t operator[](std::size_t i) const { return rates[i]; }

    friend bool operator==(const RateVector&, const RateVector&) = default;
};

/// Weighted cost sum_i w_i r_i; unit weights when `weights` is empty.
Weight cost(const std::vector<Weight>& weights, const RateVector& r);

/// A cooperative data exchange problem: N nodes, K packets, row i of the
/// distribution matrix marks the packets node i starts with. Node and packet
/// indices are 0-based here; the JSON layer converts to 1-based.
struct Instance {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<BitVector> rows;
    std::optional<std::vector<Weight>> weights;
    std::optional<NodeGroups> groups;

    static Instance from_matrix(const std::vector<std::vector<int>>& matrix);

    std::size_t node_weight(std::size_t node) const { return rows[node].weight(); }
    /// Smallest number of packets held by any node.
    std::size_t min_packets() const;
    /// Union of the packets held by `nodes`.
    BitVector packets_of(const std::vector<std::size_t>& nodes) const;
    /// Number of nodes holding packet j.
    std::size_t holders(std::size_t packet) const;
    /// Every packet is held by at least 2 and at most N-1 nodes.
    bool canonical() const;
};

/// Sub-instance on a subset of nodes and packets, with index maps back to the parent.
struct SubInstance {
    Instance instance;
    std::vector<std::size_t> node_map;    // sub node -> parent node
    std::vector<std::size_t> column_map;  // sub packet -> parent packet
};

SubInstance restrict_instance(const Instance& inst, const std::vector<std::size_t>& nodes,
                              const BitVector& columns);

/// Returns human-readable violations; empty means the instance is valid.
std::vector<std::string> validate(const Instance& inst);

/// Throws Error(InvalidInstance) listing every violation.
void require_valid(const Instance& inst);

struct ForcedTransmission {
    std::size_t node;
    std::size_t packet;

    friend bool operator==(const ForcedTransmission&, const ForcedTransmission&) = default;
};

struct NormalizationReport {
    std::vector<std::size_t> removed_universal;
    std::vector<ForcedTransmission> singleton_forced;
    std::vector<std::size_t> column_map;  // normalized column -> original column

    bool empty() const { return removed_universal.empty() && singleton_forced.empty(); }
};

/// Drops packets every node already holds and packets held by exactly one
/// node (that node sends them uncoded). Requires a valid instance.
std::pair<Instance, NormalizationReport> normalize(const Instance& inst);

/// Nodes sorted by ascending weight, ties by index. Identity when unweighted.
std::vector<std::size_t> weight_order(const Instance& inst);

}  // namespace cde
