#pragma once

// Test-side reference implementations. None of these call into the library
// code they are used to check.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "cde/model.hpp"

namespace testing_support {

/// Carry-less multiply followed by reduction modulo `poly`.
inline std::uint32_t schoolbook_mul(std::uint32_t a, std::uint32_t b, unsigned m, std::uint32_t poly) {
    std::uint32_t acc = 0;
    for (unsigned i = 0; i < m; ++i)
        if (b & (1u << i)) acc ^= a << i;
    for (int bit = 2 * static_cast<int>(m) - 2; bit >= static_cast<int>(m); --bit)
        if (acc & (1u << bit)) acc ^= poly << (bit - static_cast<int>(m));
    return acc;
}

/// Linear search for the inverse; 0 when none exists.
inline std::uint32_t brute_inverse(std::uint32_t a, unsigned m, std::uint32_t poly) {
    for (std::uint32_t x = 1; x < (1u << m); ++x)
        if (schoolbook_mul(a, x, m, poly) == 1) return x;
    return 0;
}

/// Every packet held by a random number of nodes in [2, N-1].
inline cde::Instance random_canonical(std::mt19937_64& rng, std::size_t n, std::size_t k) {
    std::vector<std::vector<int>> m(n, std::vector<int>(k, 0));
    std::vector<std::size_t> nodes(n);
    for (std::size_t i = 0; i < n; ++i) nodes[i] = i;
    for (std::size_t j = 0; j < k; ++j) {
        std::uniform_int_distribution<std::size_t> count(2, n - 1);
        const auto c = count(rng);
        std::shuffle(nodes.begin(), nodes.end(), rng);
        for (std::size_t t = 0; t < c; ++t) m[nodes[t]][j] = 1;
    }
    return cde::Instance::from_matrix(m);
}

inline cde::Instance random_canonical(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> n(3, 6), k(4, 10);
    const auto nn = n(rng);
    return random_canonical(rng, nn, k(rng));
}

inline void add_random_weights(std::mt19937_64& rng, cde::Instance& inst, int max_weight = 12) {
    std::uniform_int_distribution<int> w(1, max_weight);
    std::vector<cde::Weight> ws;
    for (std::size_t i = 0; i < inst.n; ++i) ws.emplace_back(w(rng));
    inst.weights = ws;
}

/// Straight from the cut-set definition, with no pruning.
inline bool naive_feasible(const std::vector<std::vector<int>>& e, const std::vector<int>& r) {
    const std::size_t n = e.size(), k = e.front().size();
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
        std::size_t missing = 0;
        for (std::size_t j = 0; j < k; ++j) {
            bool held = false;
            for (std::size_t i = 0; i < n; ++i)
                if ((mask >> i) & 1u && e[i][j]) held = true;
            if (!held) ++missing;
        }
        std::size_t outside = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (!((mask >> i) & 1u)) outside += static_cast<std::size_t>(r[i]);
        if (outside < missing) return false;
    }
    return true;
}

struct NaiveOptimum {
    int min_sum = -1;
    std::int64_t min_cost = -1;  // integer weights only
};

/// Full grid search over r in [0, K]^N. Only for tiny instances.
inline NaiveOptimum naive_ilp(const std::vector<std::vector<int>>& e, const std::vector<int>& weights) {
    const std::size_t n = e.size(), k = e.front().size();
    NaiveOptimum best;
    std::vector<int> r(n, 0);
    while (true) {
        if (naive_feasible(e, r)) {
            int s = 0;
            std::int64_t c = 0;
            for (std::size_t i = 0; i < n; ++i) {
                s += r[i];
                c += static_cast<std::int64_t>(weights[i]) * r[i];
            }
            if (best.min_sum < 0 || s < best.min_sum) best.min_sum = s;
            if (best.min_cost < 0 || c < best.min_cost) best.min_cost = c;
        }
        std::size_t i = 0;
        while (i < n && r[i] == static_cast<int>(k)) r[i++] = 0;
        if (i == n) break;
        ++r[i];
    }
    return best;
}

inline std::vector<std::vector<int>> to_matrix(const cde::Instance& inst) {
    std::vector<std::vector<int>> m;
    for (const auto& row : inst.rows) m.push_back(row.to_bits());
    return m;
}

}  // namespace testing_support
