#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cde/basis_search.hpp"
#include "cde/model.hpp"

namespace cde {

struct SolveResult {
    std::size_t R_star = 0;  // includes forced transmissions
    std::size_t d_star = 0;
    RateVector rate;         // original node indexing, forced sends included
    BasisSet basis;          // over the normalized columns
    Instance normalized;
    NormalizationReport normalization;
};

/// Minimum number of transmissions for universal recovery. Validates and
/// normalizes the instance; forced uncoded sends are folded into R_star and rate.
SolveResult solve(const Instance& inst);

struct WeightedResult {
    Weight cost;
    RateVector rate;
    BasisSet basis;
    std::size_t R = 0;
};

/// Minimum weighted cost. Requires a canonical instance with weights.
WeightedResult solve_weighted(const Instance& inst);

struct KappaResult {
    Weight cost;
    RateVector rate;
    BasisSet basis;
};

/// Cheapest schedule with exactly R transmissions, or nullopt when infeasible.
/// Requires a canonical instance with weights and R <= K.
std::optional<KappaResult> kappa(const Instance& inst, std::size_t R);

struct SloRound {
    std::size_t R_star = 0;           // cumulative transmissions after this round
    std::size_t K_i = 0;              // packets held by the round's nodes
    std::size_t M_i = 0;              // fewest packets at any of the round's nodes
    std::size_t d_star = 0;
    std::vector<std::size_t> nodes;   // union of groups 1..i, ascending
    BitVector columns;                // packets held by `nodes`
    RateVector rate;                  // accumulated, original node indexing
    BasisSet basis;                   // every row sent so far, over all K columns
};

struct SloResult {
    std::vector<SloRound> rounds;
};

/// Successive local omniscience over the instance's groups, in group order.
/// Each round reuses every earlier transmission.
SloResult solve_slo(const Instance& inst);

}  // namespace cde
