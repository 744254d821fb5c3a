#include "cde/codegen.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "cde/errors.hpp"

namespace cde {

namespace {

constexpr double kExhaustiveLimit = 1e5;
constexpr std::size_t kSampleCount = 10000;
constexpr std::uint64_t kSampleSeed = 0x5eed'c0de;

bool fits(std::size_t k, unsigned m) { return k <= (std::size_t{1} << m) - 1; }

std::vector<Element> thetas(std::size_t k, std::size_t shift) {
    std::vector<Element> t(k);
    for (std::size_t c = 0; c < k; ++c) t[c] = static_cast<Element>((c + shift) % k + 1);
    return t;
}

double binomial(std::size_t n, std::size_t r) {
    double out = 1;
    for (std::size_t i = 1; i <= r; ++i) out = out * static_cast<double>(n - r + i) / static_cast<double>(i);
    return out;
}

std::optional<std::string> check_square_minors(const Field& f, const FieldMatrix& m) {
    const std::size_t r = m.rows(), n = m.cols();
    if (r == 0) return std::nullopt;
    std::vector<std::size_t> pick(r);
    auto fail = [&]() {
        std::string cols;
        for (auto c : pick) cols += (cols.empty() ? "" : ",") + std::to_string(c);
        return "singular column subset {" + cols + "}";
    };
    if (binomial(n, r) <= kExhaustiveLimit) {
        for (std::size_t i = 0; i < r; ++i) pick[i] = i;
        while (true) {
            if (rank(f, m.select_columns(pick)) != r) return fail();
            std::size_t i = r;
            while (i > 0 && pick[i - 1] == n - r + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
        }
        return std::nullopt;
    }
    std::mt19937_64 rng(kSampleSeed);
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    for (std::size_t s = 0; s < kSampleCount; ++s) {
        std::shuffle(all.begin(), all.end(), rng);
        std::copy(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(r), pick.begin());
        std::sort(pick.begin(), pick.end());
        if (rank(f, m.select_columns(pick)) != r) return fail();
    }
    return std::nullopt;
}

void check_rounds(const BasisSet& basis, const std::vector<CodeRound>& rounds, std::size_t k) {
    if (rounds.empty()) raise(Errc::InvalidBasis, "no rounds given");
    std::size_t start = 0;
    for (std::size_t i = 0; i < rounds.size(); ++i) {
        const auto& rd = rounds[i];
        const std::string tag = "round " + std::to_string(i + 1) + ": ";
        if (rd.columns.width() != k) raise(Errc::InvalidBasis, tag + "column mask width differs from K");
        if (rd.rows < start || rd.rows > basis.size()) raise(Errc::InvalidBasis, tag + "row prefixes out of order");
        if (i > 0 && (rd.d > rounds[i - 1].d || !rd.columns.covers(rounds[i - 1].columns)))
            raise(Errc::InvalidBasis, tag + "rounds must have nested packets and non-increasing d");
        if (rd.columns.weight() < rd.d || rd.rows != rd.columns.weight() - rd.d)
            raise(Errc::InvalidBasis, tag + "expected K_i - d_i rows");
        for (std::size_t r = start; r < rd.rows; ++r) {
            const auto& v = basis.vectors[r];
            if (v.width() != k || !rd.columns.covers(v) || v.weight() != rd.d + 1)
                raise(Errc::InvalidBasis, tag + "row " + std::to_string(r + 1) + " has the wrong support");
        }
        const std::span<const BitVector> prefix(basis.vectors.data(), rd.rows);
        if (!basis_condition(prefix, rd.d)) raise(Errc::InvalidBasis, tag + "rows violate the subset condition");
        start = rd.rows;
    }
    if (start != basis.size()) raise(Errc::InvalidBasis, "rows beyond the last round");
}

// One construction attempt. Rows of round i come from the code spanned by
// mult(c) theta_c^j on the round's packets, where mult(c) is the product of
// (theta_c + theta_p) over packets p outside the round. These codes are
// nested, so earlier rows stay codewords of later rounds.
CodeMatrix attempt(const BasisSet& basis, const std::vector<CodeRound>& rounds, std::size_t k,
                   const FieldSpec& spec, std::size_t shift) {
    const Field f(spec);
    const auto theta = thetas(k, shift);
    CodeMatrix code{spec, FieldMatrix(basis.size(), k), basis, rounds.back().d, rounds};
    std::size_t start = 0;
    for (const auto& rd : rounds) {
        const auto cols = rd.columns.positions();
        FieldMatrix gen(rd.rows, k);
        for (auto c : cols) {
            Element mult = 1;
            for (std::size_t p = 0; p < k; ++p)
                if (!rd.columns.test(p)) mult = f.mul(mult, Field::add(theta[c], theta[p]));
            Element power = mult;
            for (std::size_t j = 0; j < rd.rows; ++j) {
                gen(j, c) = power;
                power = f.mul(power, theta[c]);
            }
        }
        for (std::size_t r = start; r < rd.rows; ++r) {
            std::vector<std::size_t> zeros;
            for (auto c : cols)
                if (!basis.vectors[r].test(c)) zeros.push_back(c);
            const auto coeffs = left_kernel_vector(f, gen.select_columns(zeros));
            auto row = left_multiply(f, coeffs, gen);
            const auto lead = std::find_if(row.begin(), row.end(), [](Element e) { return e != 0; });
            if (lead != row.end()) {
                const Element scale = f.inv(*lead);
                for (auto& e : row) e = f.mul(e, scale);
            }
            std::copy(row.begin(), row.end(), code.matrix.row(r).begin());
        }
        start = rd.rows;
    }
    return code;
}

FieldMatrix columns_of(const FieldMatrix& m, std::size_t rows, const std::vector<std::size_t>& cols) {
    return m.first_rows(rows).select_columns(cols);
}

}  // namespace

FieldSpec default_field_for(std::size_t k) {
    for (unsigned m = 4; m <= 16; ++m)
        if (fits(k, m)) return default_field_spec(m);
    raise(Errc::FieldTooSmall, "K = " + std::to_string(k) + " exceeds the largest supported field");
}

FieldMatrix vandermonde(std::size_t r, std::size_t k, const FieldSpec& field, std::size_t shift) {
    if (!fits(k, field.m))
        raise(Errc::FieldTooSmall, "GF(2^" + std::to_string(field.m) + ") has fewer than " + std::to_string(k) +
                                       " nonzero points");
    if (r > k) raise(Errc::DimensionMismatch, "R = " + std::to_string(r) + " exceeds K = " + std::to_string(k));
    const Field f(field);
    const auto theta = thetas(k, shift);
    FieldMatrix v(r, k);
    for (std::size_t c = 0; c < k; ++c) {
        Element power = 1;
        for (std::size_t j = 0; j < r; ++j) {
            v(j, c) = power;
            power = f.mul(power, theta[c]);
        }
    }
    return v;
}

CodeMatrix build_nested_code(const BasisSet& basis, std::vector<CodeRound> rounds, std::optional<FieldSpec> field) {
    if (rounds.empty()) raise(Errc::InvalidBasis, "no rounds given");
    const std::size_t k = rounds.back().columns.width();
    check_rounds(basis, rounds, k);

    const FieldSpec first = field.value_or(default_field_for(k));
    if (!fits(k, first.m))
        raise(Errc::FieldTooSmall, "GF(2^" + std::to_string(first.m) + ") has fewer than " + std::to_string(k) +
                                       " nonzero points");
    std::string last_failure;
    for (unsigned m = first.m; m <= 16; ++m) {
        const FieldSpec spec = m == first.m ? first : default_field_spec(m);
        for (std::size_t shift = 0; shift < std::max<std::size_t>(k, 1); ++shift) {
            try {
                auto code = attempt(basis, rounds, k, spec, shift);
                const auto problem = verify_code(code);
                if (!problem) return code;
                last_failure = *problem;
            } catch (const Error& e) {
                if (e.code() != Errc::DegenerateKernel) throw;
                last_failure = e.what();
            }
            last_failure = "m = " + std::to_string(m) + ", shift " + std::to_string(shift) + ": " + last_failure;
        }
    }
    raise(Errc::ConstructionFailed, "no valid code up to GF(2^16); last attempt " + last_failure);
}

CodeMatrix build_code(const BasisSet& basis, std::optional<FieldSpec> field) {
    if (basis.size() == 0) raise(Errc::InvalidBasis, "empty basis");
    const std::size_t k = basis.vectors.front().width();
    if (basis.size() + basis.d != k)
        raise(Errc::InvalidBasis, "expected " + std::to_string(k - std::min(k, basis.d)) + " vectors, got " +
                                      std::to_string(basis.size()));
    return build_nested_code(basis, {CodeRound{basis.size(), basis.d, BitVector::ones(k), {}}}, field);
}

std::optional<std::string> verify_code(const CodeMatrix& code) {
    const Field f(code.field);
    const auto& a = code.matrix;
    if (a.rows() != code.support.size()) return "row count differs from the support";
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const auto& v = code.support.vectors[r];
        if (v.width() != a.cols()) return "support width differs from the matrix";
        for (std::size_t c = 0; c < a.cols(); ++c)
            if ((a(r, c) != 0) != v.test(c))
                return "row " + std::to_string(r + 1) + " support differs at packet " + std::to_string(c + 1);
    }
    if (rank(f, a) != a.rows()) return "matrix is rank deficient";
    for (std::size_t i = 0; i < code.rounds.size(); ++i) {
        const auto& rd = code.rounds[i];
        if (rd.rows > a.rows()) return "round " + std::to_string(i + 1) + " exceeds the matrix";
        const auto block = columns_of(a, rd.rows, rd.columns.positions());
        if (rank(f, block) != rd.rows) return "round " + std::to_string(i + 1) + " prefix is rank deficient";
        if (auto bad = check_square_minors(f, block)) return "round " + std::to_string(i + 1) + ": " + *bad;
    }
    return std::nullopt;
}

CodeMatrix embed_code(const CodeMatrix& code, const NormalizationReport& report, std::size_t original_k) {
    const std::size_t rows = code.matrix.rows() + report.singleton_forced.size();
    CodeMatrix out{code.field, FieldMatrix(rows, original_k), BasisSet{code.d, {}, {}}, code.d, {}};
    for (std::size_t r = 0; r < code.matrix.rows(); ++r) {
        BitVector v(original_k);
        for (std::size_t c = 0; c < code.matrix.cols(); ++c) {
            out.matrix(r, report.column_map[c]) = code.matrix(r, c);
            if (code.support.vectors[r].test(c)) v.set(report.column_map[c]);
        }
        out.support.vectors.push_back(std::move(v));
        out.support.provenance.push_back(code.support.provenance[r]);
    }
    std::size_t r = code.matrix.rows();
    for (const auto& fs : report.singleton_forced) {
        out.matrix(r++, fs.packet) = 1;
        out.support.vectors.push_back(BitVector::unit(original_k, fs.packet));
        out.support.provenance.push_back(fs.node);
    }
    return out;
}

std::vector<Element> encode(const CodeMatrix& code, std::span<const Element> packets) {
    if (packets.size() != code.matrix.cols())
        raise(Errc::DimensionMismatch, "expected " + std::to_string(code.matrix.cols()) + " packets, got " +
                                           std::to_string(packets.size()));
    return multiply(Field(code.field), code.matrix, packets);
}

std::vector<Element> decode(const CodeMatrix& code, std::span<const std::pair<std::size_t, Element>> known,
                            std::span<const Element> transmissions) {
    const auto& a = code.matrix;
    const std::size_t k = a.cols();
    if (transmissions.size() != a.rows())
        raise(Errc::DimensionMismatch, "expected " + std::to_string(a.rows()) + " transmissions, got " +
                                           std::to_string(transmissions.size()));
    const Field f(code.field);
    std::vector<Element> out(k, 0);
    std::vector<bool> is_known(k, false);
    for (const auto& [idx, value] : known) {
        if (idx >= k) raise(Errc::DimensionMismatch, "packet index " + std::to_string(idx + 1) + " out of range");
        if (is_known[idx]) raise(Errc::DimensionMismatch, "packet " + std::to_string(idx + 1) + " given twice");
        if (!f.contains(value)) raise(Errc::DimensionMismatch, "packet value outside the field");
        is_known[idx] = true;
        out[idx] = value;
    }
    std::vector<std::size_t> missing;
    for (std::size_t c = 0; c < k; ++c)
        if (!is_known[c]) missing.push_back(c);
    if (missing.empty()) return out;
    if (missing.size() > a.rows())
        raise(Errc::InsufficientKnowledge, std::to_string(missing.size()) + " unknown packets but only " +
                                               std::to_string(a.rows()) + " transmissions");
    std::vector<Element> rhs(transmissions.begin(), transmissions.end());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < k; ++c)
            if (is_known[c]) rhs[r] = Field::sub(rhs[r], f.mul(a(r, c), out[c]));
    std::vector<Element> x;
    try {
        x = solve(f, a.select_columns(missing), rhs);
    } catch (const Error& e) {
        if (e.code() != Errc::Singular) throw;
        raise(Errc::SingularSystem, "unknown packet columns are rank deficient");
    }
    for (std::size_t i = 0; i < missing.size(); ++i) out[missing[i]] = x[i];
    return out;
}

RecoveryReport verify_universal_recovery(const CodeMatrix& code, const Instance& inst) {
    if (code.matrix.cols() != inst.k)
        raise(Errc::WidthMismatch, "code has " + std::to_string(code.matrix.cols()) + " columns, instance has K = " +
                                       std::to_string(inst.k));
    const Field f(code.field);
    RecoveryReport report;
    for (std::size_t i = 0; i < inst.n; ++i) {
        const auto& held = inst.rows[i];
        if (held.weight() < code.d) {
            report.failures.push_back({i, "below d"});
            continue;
        }
        const auto missing = (~held).positions();
        if (missing.empty()) continue;
        if (rank(f, code.matrix.select_columns(missing)) != missing.size())
            report.failures.push_back({i, "rank deficient"});
    }
    return report;
}

RecoveryReport verify_local_recovery(const CodeMatrix& code, const Instance& inst) {
    if (code.matrix.cols() != inst.k)
        raise(Errc::WidthMismatch, "code has " + std::to_string(code.matrix.cols()) + " columns, instance has K = " +
                                       std::to_string(inst.k));
    const Field f(code.field);
    RecoveryReport report;
    std::set<std::size_t> failed;
    for (std::size_t i = 0; i < code.rounds.size(); ++i) {
        const auto& rd = code.rounds[i];
        const std::string tag = "round " + std::to_string(i + 1) + ": ";
        for (auto node : rd.nodes) {
            if (failed.count(node)) continue;
            const BitVector held = inst.rows[node] & rd.columns;
            if (held.weight() < rd.d) {
                report.failures.push_back({node, tag + "below d"});
                failed.insert(node);
                continue;
            }
            const auto missing = (rd.columns & ~held).positions();
            if (missing.empty()) continue;
            if (rank(f, columns_of(code.matrix, rd.rows, missing)) != missing.size()) {
                report.failures.push_back({node, tag + "rank deficient"});
                failed.insert(node);
            }
        }
    }
    return report;
}

}  // namespace cde
