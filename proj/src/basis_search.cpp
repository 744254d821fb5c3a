#include "cde/basis_search.hpp"

#include <numeric>
#include <string>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include "cde/errors.hpp"

namespace cde {

std::vector<BitVector> candidates(const BitVector& u, std::size_t d) {
    const auto pos = u.positions();
    if (pos.size() <= d)
        raise(Errc::WeightTooLow, "vector of weight " + std::to_string(pos.size()) +
                                      " cannot generate weight-" + std::to_string(d + 1) + " candidates");
    BitVector prefix(u.width());
    for (std::size_t k = 0; k < d; ++k) prefix.set(pos[k]);
    std::vector<BitVector> out;
    out.reserve(pos.size() - d);
    for (std::size_t k = d; k < pos.size(); ++k) {
        BitVector b = prefix;
        b.set(pos[k]);
        out.push_back(std::move(b));
    }
    return out;
}

bool generates(const BitVector& u, const BitVector& v) {
    if (u.width() != v.width())
        raise(Errc::WidthMismatch, "widths " + std::to_string(u.width()) + " and " + std::to_string(v.width()));
    return u.covers(v);
}

bool should_merge(std::span<const BitVector> pool_subset, const BitVector& b, std::size_t d) {
    BitVector joined = b;
    long long bound = static_cast<long long>(b.weight());
    for (const auto& q : pool_subset) {
        joined |= q;
        bound += static_cast<long long>(q.weight()) - static_cast<long long>(d);
    }
    return static_cast<long long>(joined.weight()) <= bound;
}

namespace {

// Merges b with pool subsets of size 1, then size 2, in pool order; every
// merge restarts the scan with the merged vector. The result joins the pool.
void merge_into_pool(MergePool& pool, BitVector b, std::size_t d) {
    auto& q = pool.vectors;
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < q.size() && !merged; ++i) {
            const BitVector one[] = {q[i]};
            if (should_merge(one, b, d)) {
                b |= q[i];
                q.erase(q.begin() + static_cast<std::ptrdiff_t>(i));
                merged = true;
            }
        }
        for (std::size_t i = 0; i < q.size() && !merged; ++i) {
            for (std::size_t j = i + 1; j < q.size() && !merged; ++j) {
                const BitVector two[] = {q[i], q[j]};
                if (should_merge(two, b, d)) {
                    b |= q[i];
                    b |= q[j];
                    q.erase(q.begin() + static_cast<std::ptrdiff_t>(j));
                    q.erase(q.begin() + static_cast<std::ptrdiff_t>(i));
                    merged = true;
                }
            }
        }
    }
    q.push_back(std::move(b));
}

}  // namespace

std::optional<SdbFound> sdb(const Instance& inst, std::size_t d, std::span<const std::size_t> order) {
    if (d > inst.k) raise(Errc::DimensionMismatch, "d = " + std::to_string(d) + " exceeds K = " + std::to_string(inst.k));
    if (order.size() != inst.n)
        raise(Errc::DimensionMismatch, "node order has " + std::to_string(order.size()) + " entries for " +
                                           std::to_string(inst.n) + " nodes");
    const std::size_t target = inst.k - d;
    SdbFound found{RateVector(inst.n), BasisSet{d, {}, {}}};
    if (target == 0) return found;

    MergePool pool;
    for (auto node : order) {
        const auto& e = inst.rows[node];
        if (e.weight() <= d) continue;
        for (auto& b : candidates(e, d)) {
            bool covered = false;
            for (const auto& q : pool.vectors) {
                if (q.covers(b)) {
                    covered = true;
                    break;
                }
            }
            if (!covered) {
                ++found.rate[node];
                found.basis.vectors.push_back(b);
                found.basis.provenance.push_back(node);
                merge_into_pool(pool, std::move(b), d);
            }
            if (found.basis.size() == target) return found;
        }
    }
    return std::nullopt;
}

std::optional<SdbFound> sdb(const Instance& inst, std::size_t d) {
    std::vector<std::size_t> order(inst.n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    return sdb(inst, d, order);
}

bool basis_condition_exhaustive(std::span<const BitVector> vectors, std::size_t d) {
    const std::size_t n = vectors.size();
    if (n > 24) raise(Errc::TooLarge, "exhaustive subset check limited to 24 vectors");
    if (n == 0) return true;
    const std::size_t width = vectors.front().width();
    // OR of each subset built from the subset without its lowest bit.
    std::vector<BitVector> unions(std::size_t{1} << n, BitVector(width));
    for (std::size_t mask = 1; mask < unions.size(); ++mask) {
        const auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
        unions[mask] = unions[mask & (mask - 1)] | vectors[low];
        const auto count = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (unions[mask].weight() < count + d) return false;
    }
    return true;
}

bool basis_condition(std::span<const BitVector> vectors, std::size_t d) {
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    const std::size_t n = vectors.size();
    if (n == 0) return true;
    const std::size_t width = vectors.front().width();

    for (std::size_t special = 0; special < n; ++special) {
        const std::size_t left = n + d;  // special vector appears d+1 times
        Graph g(left + width);
        std::size_t slot = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t copies = i == special ? d + 1 : 1;
            const auto pos = vectors[i].positions();
            for (std::size_t c = 0; c < copies; ++c, ++slot)
                for (auto p : pos) boost::add_edge(slot, left + p, g);
        }
        std::vector<boost::graph_traits<Graph>::vertex_descriptor> mate(left + width);
        boost::edmonds_maximum_cardinality_matching(g, &mate[0]);
        if (boost::matching_size(g, &mate[0]) != left) return false;
    }
    return true;
}

bool is_balanced_basis_of(const BasisSet& basis, const Instance& inst) {
    if (basis.d > inst.k || basis.size() != inst.k - basis.d) return false;
    if (basis.provenance.size() != basis.size()) return false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& v = basis.vectors[i];
        if (v.width() != inst.k || v.weight() != basis.d + 1) return false;
        if (basis.provenance[i] >= inst.n || !inst.rows[basis.provenance[i]].covers(v)) return false;
    }
    return basis.size() <= 20 ? basis_condition_exhaustive(basis.vectors, basis.d)
                              : basis_condition(basis.vectors, basis.d);
}

}  // namespace cde
