#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cde/bitvector.hpp"
#include "cde/model.hpp"

namespace cde {

/// A (d,K)-basis: K-d binary vectors whose every nonempty subset S has an
/// OR of weight at least |S| + d. `provenance[i]` is the node whose packet
/// set generates `vectors[i]`.
struct BasisSet {
    std::size_t d = 0;
    std::vector<BitVector> vectors;
    std::vector<std::size_t> provenance;

    std::size_t size() const noexcept { return vectors.size(); }
};

/// Merged vectors used to prune candidates during the search.
struct MergePool {
    std::vector<BitVector> vectors;
};

/// The w_H(u) - d candidates of weight d+1 generated by u: the first d set
/// positions of u plus its (d+i)-th set position. Throws WeightTooLow when
/// w_H(u) <= d.
std::vector<BitVector> candidates(const BitVector& u, std::size_t d);

/// Support containment. Throws WidthMismatch.
bool generates(const BitVector& u, const BitVector& v);

/// w(q_S | b) <= sum_{q in S} w(q) + w(b) - |S| d, for |S| in {1, 2}.
bool should_merge(std::span<const BitVector> pool_subset, const BitVector& b, std::size_t d);

struct SdbFound {
    RateVector rate;
    BasisSet basis;
};

/// Greedy search for a balanced (d,K)-basis generated by the rows of `inst`,
/// visiting nodes in `order`. Returns nullopt when none is found. d == K is
/// accepted and yields the empty basis.
std::optional<SdbFound> sdb(const Instance& inst, std::size_t d, std::span<const std::size_t> order);

/// sdb with nodes in index order.
std::optional<SdbFound> sdb(const Instance& inst, std::size_t d);

/// Subset condition checked over every nonempty subset. Requires at most 24 vectors.
bool basis_condition_exhaustive(std::span<const BitVector> vectors, std::size_t d);

/// Same condition via bipartite matching: for each vector v, the graph with
/// v replicated d+1 times must match every left vertex.
bool basis_condition(std::span<const BitVector> vectors, std::size_t d);

/// Complete balanced basis whose vectors are generated by their provenance rows.
bool is_balanced_basis_of(const BasisSet& basis, const Instance& inst);

}  // namespace cde
