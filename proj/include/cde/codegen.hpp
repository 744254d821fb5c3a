#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cde/basis_search.hpp"
#include "cde/gf2m.hpp"
#include "cde/linalg.hpp"
#include "cde/model.hpp"

namespace cde {

/// A prefix of the code's rows that must on its own let `nodes` recover
/// every packet in `columns`.
struct CodeRound {
    std::size_t rows = 0;
    std::size_t d = 0;
    BitVector columns;
    std::vector<std::size_t> nodes;
};

struct CodeMatrix {
    FieldSpec field;
    FieldMatrix matrix;
    BasisSet support;
    std::size_t d = 0;
    /// Nested prefixes, last one covering every row. Empty for codes that are
    /// not MDS as a whole (e.g. after embedding forced sends).
    std::vector<CodeRound> rounds;
};

/// Smallest m >= 4 whose field has K distinct nonzero points, with the
/// built-in primitive polynomial. Throws FieldTooSmall above m = 16.
FieldSpec default_field_for(std::size_t k);

/// R x K Vandermonde matrix with evaluation points theta_c = ((c + shift) mod K) + 1.
/// Throws FieldTooSmall when K > 2^m - 1, DimensionMismatch when R > K.
FieldMatrix vandermonde(std::size_t r, std::size_t k, const FieldSpec& field, std::size_t shift = 0);

/// Code whose row i is supported exactly on basis vector i. Requires a
/// complete balanced basis (InvalidBasis otherwise). Escalates through theta
/// shifts and larger fields; throws ConstructionFailed at the cap.
CodeMatrix build_code(const BasisSet& basis, std::optional<FieldSpec> field = std::nullopt);

/// Code whose first rounds[i].rows rows serve round i. `basis` lists every
/// row in send order; rows of round i lie inside rounds[i].columns and have
/// weight rounds[i].d + 1. The d values must be non-increasing.
CodeMatrix build_nested_code(const BasisSet& basis, std::vector<CodeRound> rounds,
                             std::optional<FieldSpec> field = std::nullopt);

/// Describes the first violated code invariant, or nullopt when the support
/// pattern, rank and (per round) every square column submatrix check out.
std::optional<std::string> verify_code(const CodeMatrix& code);

/// Re-indexes a code over normalized columns to the original packets and
/// appends one uncoded row per forced send.
CodeMatrix embed_code(const CodeMatrix& code, const NormalizationReport& report, std::size_t original_k);

/// T = A P. Throws DimensionMismatch.
std::vector<Element> encode(const CodeMatrix& code, std::span<const Element> packets);

/// Recovers all K packets from known (index, value) pairs and the R
/// transmissions. Throws DimensionMismatch on malformed input,
/// InsufficientKnowledge when more than R packets are unknown, SingularSystem
/// when the unknown columns are rank deficient.
std::vector<Element> decode(const CodeMatrix& code, std::span<const std::pair<std::size_t, Element>> known,
                            std::span<const Element> transmissions);

struct RecoveryFailure {
    std::size_t node = 0;
    std::string reason;
};

struct RecoveryReport {
    std::vector<RecoveryFailure> failures;
    bool ok() const noexcept { return failures.empty(); }
};

/// Every node can solve for its missing packets from all transmissions.
/// Nodes holding fewer than d packets fail with "below d". Throws WidthMismatch.
RecoveryReport verify_universal_recovery(const CodeMatrix& code, const Instance& inst);

/// For each round, every round node recovers the round's packets from the
/// round's row prefix alone. Failures name the first failing round.
RecoveryReport verify_local_recovery(const CodeMatrix& code, const Instance& inst);

}  // namespace cde
