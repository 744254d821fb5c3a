#include <doctest.h>

#include <random>

#include "cde/codegen.hpp"
#include "cde/errors.hpp"
#include "cde/solver.hpp"
#include "support/oracles.hpp"

using namespace cde;
using testing_support::schoolbook_mul;

namespace {

const FieldSpec gf16{4, 0x13};

Instance example1() {
    return Instance::from_matrix({
        {1, 1, 1, 1, 1, 1, 0, 0, 0},
        {1, 1, 1, 0, 0, 0, 1, 1, 1},
        {0, 0, 0, 1, 1, 1, 1, 1, 1},
        {1, 0, 1, 0, 0, 1, 0, 1, 0},
    });
}

BasisSet worked_basis() {
    return BasisSet{4,
                    {{1, 1, 1, 1, 1, 0, 0, 0, 0},
                     {1, 1, 1, 1, 0, 1, 0, 0, 0},
                     {1, 1, 1, 0, 0, 0, 1, 1, 0},
                     {1, 1, 1, 0, 0, 0, 1, 0, 1},
                     {0, 0, 0, 1, 1, 1, 1, 1, 0}},
                    {0, 0, 1, 1, 2}};
}

// The published coefficient matrix for the worked basis.
CodeMatrix published_code() {
    return CodeMatrix{gf16,
                      FieldMatrix(5, 9,
                                  {5, 4, 4, 1, 1, 0, 0, 0, 0,    //
                                   15, 11, 14, 14, 0, 1, 0, 0, 0,  //
                                   3, 6, 13, 0, 0, 0, 15, 14, 0,   //
                                   9, 12, 7, 0, 0, 0, 15, 0, 14,   //
                                   0, 0, 0, 10, 14, 6, 9, 8, 0}),
                      worked_basis(),
                      4,
                      {CodeRound{5, 4, BitVector::ones(9), {}}}};
}

std::vector<Element> random_packets(std::mt19937_64& rng, const FieldSpec& f, std::size_t k) {
    std::uniform_int_distribution<std::uint32_t> pick(0, (1u << f.m) - 1);
    std::vector<Element> p(k);
    for (auto& x : p) x = static_cast<Element>(pick(rng));
    return p;
}

std::vector<std::pair<std::size_t, Element>> known_of(const BitVector& held, const std::vector<Element>& packets) {
    std::vector<std::pair<std::size_t, Element>> known;
    for (auto p : held.positions()) known.emplace_back(p, packets[p]);
    return known;
}

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an exception");
    return Errc::Parse;
}

}  // namespace

TEST_CASE("Vandermonde rows over GF(16)") {
    const auto v = vandermonde(5, 9, gf16);
    const std::vector<Element> expect[] = {
        {1, 1, 1, 1, 1, 1, 1, 1, 1},   {1, 2, 3, 4, 5, 6, 7, 8, 9},    {1, 4, 5, 3, 2, 7, 6, 12, 13},
        {1, 8, 15, 12, 10, 1, 1, 10, 15}, {1, 3, 2, 5, 4, 6, 7, 15, 14},
    };
    for (std::size_t r = 0; r < 5; ++r)
        CHECK(std::vector<Element>(v.row(r).begin(), v.row(r).end()) == expect[r]);

    const Field f(gf16);
    std::size_t subsets = 0;
    for (std::size_t mask = 0; mask < 512; ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) != 5) continue;
        std::vector<std::size_t> cols;
        for (std::size_t c = 0; c < 9; ++c)
            if ((mask >> c) & 1u) cols.push_back(c);
        CHECK(rank(f, v.select_columns(cols)) == 5);
        ++subsets;
    }
    CHECK(subsets == 126);
    CHECK(rank(f, vandermonde(9, 9, gf16)) == 9);
}

TEST_CASE("Vandermonde field and shape limits") {
    CHECK(code_of([] { vandermonde(3, 16, gf16); }) == Errc::FieldTooSmall);
    CHECK_NOTHROW(vandermonde(3, 15, gf16));
    CHECK(code_of([] { vandermonde(10, 9, gf16); }) == Errc::DimensionMismatch);
    CHECK(default_field_for(9) == gf16);
    CHECK(default_field_for(15).m == 4);
    CHECK(default_field_for(16).m == 5);
}

TEST_CASE("published matrix passes every invariant") {
    const auto code = published_code();
    CHECK_FALSE(verify_code(code).has_value());
    CHECK(verify_universal_recovery(code, example1()).ok());
}

TEST_CASE("encode multiplies by the coefficient matrix") {
    const auto code = published_code();
    std::vector<Element> packets{1, 2, 3, 4, 5, 6, 7, 8, 9};
    const auto t = encode(code, packets);
    std::uint32_t t1 = 0;
    const std::uint32_t coeff[] = {5, 4, 4, 1, 1};
    for (std::uint32_t j = 0; j < 5; ++j) t1 ^= schoolbook_mul(coeff[j], j + 1, 4, 0x13);
    CHECK(t[0] == t1);
    CHECK(encode(code, std::vector<Element>(9, 0)) == std::vector<Element>(5, 0));
    CHECK(code_of([&] { encode(code, std::vector<Element>(8, 0)); }) == Errc::DimensionMismatch);
}

TEST_CASE("built code for the worked basis") {
    const auto code = build_code(worked_basis(), gf16);
    CHECK(code.field == gf16);
    CHECK(code.matrix.rows() == 5);
    CHECK(code.matrix.cols() == 9);
    const auto pub = published_code();
    for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t c = 0; c < 9; ++c) CHECK((code.matrix(r, c) != 0) == (pub.matrix(r, c) != 0));
    CHECK_FALSE(verify_code(code).has_value());
    CHECK(verify_universal_recovery(code, example1()).ok());
    CHECK(build_code(worked_basis(), gf16).matrix == code.matrix);
}

TEST_CASE("unit basis gives the identity") {
    BasisSet units{0, {}, {}};
    for (std::size_t j = 0; j < 6; ++j) {
        units.vectors.push_back(BitVector::unit(6, j));
        units.provenance.push_back(0);
    }
    const auto code = build_code(units);
    CHECK(code.matrix == FieldMatrix::identity(6));
    CHECK(verify_universal_recovery(code, Instance::from_matrix({{1, 0, 0, 0, 0, 0}, {0, 1, 1, 1, 1, 1}})).ok());
}

TEST_CASE("decode round trips through every d-subset of known packets") {
    const auto code = build_code(worked_basis(), gf16);
    std::mt19937_64 rng(61);
    std::size_t subsets = 0;
    for (std::size_t mask = 0; mask < 512; ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) != 4) continue;
        ++subsets;
        BitVector held(9);
        for (std::size_t c = 0; c < 9; ++c)
            if ((mask >> c) & 1u) held.set(c);
        for (int t = 0; t < 20; ++t) {
            const auto packets = random_packets(rng, gf16, 9);
            REQUIRE(decode(code, known_of(held, packets), encode(code, packets)) == packets);
        }
    }
    CHECK(subsets == 126);

    const auto packets = random_packets(rng, gf16, 9);
    const BitVector e5{1, 0, 1, 0, 1, 0, 0, 1, 0};
    CHECK(decode(code, known_of(e5, packets), encode(code, packets)) == packets);
    CHECK(decode(code, known_of(BitVector::ones(9), packets), encode(code, packets)) == packets);
}

TEST_CASE("decode errors") {
    const auto code = build_code(worked_basis(), gf16);
    std::mt19937_64 rng(62);
    const auto packets = random_packets(rng, gf16, 9);
    const auto sent = encode(code, packets);
    const BitVector three{1, 1, 1, 0, 0, 0, 0, 0, 0};
    CHECK(code_of([&] { decode(code, known_of(three, packets), sent); }) == Errc::InsufficientKnowledge);
    const std::vector<std::pair<std::size_t, Element>> dup{{0, 1}, {0, 1}, {1, 1}, {2, 1}};
    CHECK(code_of([&] { decode(code, dup, sent); }) == Errc::DimensionMismatch);
    CHECK(code_of([&] { decode(code, known_of(three, packets), std::vector<Element>(4, 0)); }) ==
          Errc::DimensionMismatch);

    auto broken = code;
    for (std::size_t c = 0; c < 9; ++c) broken.matrix(1, c) = broken.matrix(0, c);
    const BitVector four{0, 0, 0, 0, 0, 1, 1, 1, 1};
    CHECK(code_of([&] { decode(broken, known_of(four, packets), encode(broken, packets)); }) ==
          Errc::SingularSystem);
}

TEST_CASE("recovery report names nodes below d") {
    const auto code = build_code(worked_basis(), gf16);
    auto inst = example1();
    inst.rows.push_back(BitVector{1, 0, 0, 0, 0, 0, 0, 0, 1});
    ++inst.n;
    const auto report = verify_universal_recovery(code, inst);
    REQUIRE(report.failures.size() == 1);
    CHECK(report.failures[0].node == 4);
    CHECK(report.failures[0].reason == "below d");
    CHECK(code_of([&] { verify_universal_recovery(code, Instance::from_matrix({{1, 0}, {0, 1}})); }) ==
          Errc::WidthMismatch);
}

TEST_CASE("build_code rejects incomplete or invalid bases") {
    auto b = worked_basis();
    b.vectors.pop_back();
    b.provenance.pop_back();
    CHECK(code_of([&] { build_code(b); }) == Errc::InvalidBasis);
    b = worked_basis();
    b.vectors[4] = b.vectors[0];
    CHECK(code_of([&] { build_code(b); }) == Errc::InvalidBasis);
    CHECK(code_of([] { build_code(BasisSet{}); }) == Errc::InvalidBasis);
    CHECK(code_of([] { build_code(worked_basis(), FieldSpec{3, 0xb}); }) == Errc::FieldTooSmall);
}

TEST_CASE("codes from random instances recover and every row has minimum weight") {
    std::mt19937_64 rng(63);
    for (int t = 0; t < 60; ++t) {
        const auto inst = testing_support::random_canonical(rng);
        const auto res = solve(inst);
        CAPTURE(t);
        const auto code = build_code(res.basis);
        CHECK_FALSE(verify_code(code).has_value());
        const auto report = verify_universal_recovery(code, inst);
        CHECK(report.ok());
        for (std::size_t r = 0; r < code.matrix.rows(); ++r) {
            std::size_t nz = 0;
            for (auto e : code.matrix.row(r)) nz += e != 0;
            CHECK(nz == res.d_star + 1);
        }
        for (int p = 0; p < 5; ++p) {
            const auto packets = random_packets(rng, code.field, inst.k);
            const auto sent = encode(code, packets);
            for (std::size_t i = 0; i < inst.n; ++i)
                CHECK(decode(code, known_of(inst.rows[i], packets), sent) == packets);
        }
    }
}

TEST_CASE("embedding restores original packet indices") {
    const auto inst = Instance::from_matrix({
        {1, 1, 0, 1, 0, 1},
        {1, 0, 1, 1, 0, 0},
        {1, 1, 1, 0, 1, 0},
    });
    const auto res = solve(inst);
    const auto code = embed_code(build_code(res.basis), res.normalization, inst.k);
    CHECK(code.matrix.rows() == res.R_star);
    CHECK(code.matrix.cols() == 6);
    CHECK_FALSE(verify_code(code).has_value());
    CHECK(verify_universal_recovery(code, inst).ok());
    std::mt19937_64 rng(64);
    const auto packets = random_packets(rng, code.field, 6);
    for (std::size_t i = 0; i < inst.n; ++i)
        CHECK(decode(code, known_of(inst.rows[i], packets), encode(code, packets)) == packets);
}

TEST_CASE("nested code serves every round from its prefix") {
    auto inst = Instance::from_matrix({
        {1, 1, 1, 1, 0, 0, 0, 0, 0},
        {0, 1, 1, 1, 1, 0, 0, 0, 0},
        {1, 1, 0, 0, 0, 1, 0, 0, 0},
        {0, 0, 1, 1, 0, 0, 1, 0, 0},
        {1, 0, 1, 1, 1, 1, 1, 1, 0},
        {1, 1, 1, 1, 1, 0, 1, 0, 1},
    });
    inst.groups = NodeGroups{{0, 1}, {2, 3}, {4, 5}};
    const auto slo = solve_slo(inst);
    std::vector<CodeRound> rounds;
    for (const auto& rd : slo.rounds) rounds.push_back({rd.R_star, rd.d_star, rd.columns, rd.nodes});
    const auto code = build_nested_code(slo.rounds.back().basis, rounds);
    CHECK(code.matrix.rows() == 7);
    CHECK_FALSE(verify_code(code).has_value());
    CHECK(verify_local_recovery(code, inst).ok());
    CHECK(verify_universal_recovery(code, inst).ok());

    // Round 1 nodes decode their five packets from the first two transmissions.
    std::mt19937_64 rng(65);
    const auto packets = random_packets(rng, code.field, 9);
    const auto sent = encode(code, packets);
    const Field f(code.field);
    const auto cols = slo.rounds[0].columns.positions();
    for (auto node : slo.rounds[0].nodes) {
        std::vector<std::size_t> missing;
        std::vector<Element> rhs(sent.begin(), sent.begin() + 2);
        for (auto c : cols) {
            if (inst.rows[node].test(c)) {
                for (std::size_t r = 0; r < 2; ++r) rhs[r] ^= f.mul(code.matrix(r, c), packets[c]);
            } else {
                missing.push_back(c);
            }
        }
        const auto x = solve(f, code.matrix.first_rows(2).select_columns(missing), rhs);
        for (std::size_t i = 0; i < missing.size(); ++i) CHECK(x[i] == packets[missing[i]]);
    }
}

TEST_CASE("nested codes on random groupings") {
    std::mt19937_64 rng(66);
    for (int t = 0; t < 40; ++t) {
        auto inst = testing_support::random_canonical(rng);
        NodeGroups g;
        for (std::size_t i = 0; i < inst.n; i += 2) {
            g.push_back({i});
            if (i + 1 < inst.n) g.back().push_back(i + 1);
        }
        inst.groups = g;
        const auto slo = solve_slo(inst);
        std::vector<CodeRound> rounds;
        for (const auto& rd : slo.rounds) rounds.push_back({rd.R_star, rd.d_star, rd.columns, rd.nodes});
        CAPTURE(t);
        const auto code = build_nested_code(slo.rounds.back().basis, rounds);
        CHECK_FALSE(verify_code(code).has_value());
        CHECK(verify_local_recovery(code, inst).ok());
    }
}
