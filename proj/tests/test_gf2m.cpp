#include <doctest.h>

#include <random>

#include "cde/errors.hpp"
#include "cde/gf2m.hpp"
#include "support/oracles.hpp"

using namespace cde;
using testing_support::brute_inverse;
using testing_support::schoolbook_mul;

namespace {

void check_axioms_exhaustive(unsigned m) {
    const Field f(m);
    const auto q = f.size();
    const auto poly = f.spec().poly;
    for (std::uint32_t a = 0; a < q; ++a) {
        const auto ea = static_cast<Element>(a);
        CHECK(f.mul(ea, 1) == ea);
        CHECK(f.mul(ea, 0) == 0);
        CHECK(Field::add(ea, ea) == 0);
        if (a != 0) {
            CHECK(f.mul(ea, f.inv(ea)) == 1);
            CHECK(f.inv(ea) == brute_inverse(a, m, poly));
        }
        for (std::uint32_t b = 0; b < q; ++b) {
            const auto eb = static_cast<Element>(b);
            REQUIRE(f.mul(ea, eb) == schoolbook_mul(a, b, m, poly));
            CHECK(f.mul(ea, eb) == f.mul(eb, ea));
            for (std::uint32_t c = 0; c < q; ++c) {
                const auto ec = static_cast<Element>(c);
                CHECK(f.mul(f.mul(ea, eb), ec) == f.mul(ea, f.mul(eb, ec)));
                CHECK(f.mul(ea, Field::add(eb, ec)) == Field::add(f.mul(ea, eb), f.mul(ea, ec)));
            }
        }
    }
}

}  // namespace

TEST_CASE("schoolbook oracle reproduces the worked GF(16) values") {
    CHECK(schoolbook_mul(9, 12, 4, 0x13) == 6);
    CHECK(brute_inverse(2, 4, 0x13) == 9);
}

TEST_CASE("table arithmetic agrees with the worked GF(16) values") {
    const Field f(FieldSpec{4, 0x13});
    CHECK(f.mul(9, 12) == 6);
    CHECK(f.inv(2) == 9);
    CHECK(f.div(6, 12) == 9);
}

TEST_CASE("field axioms hold exhaustively for small m") {
    for (unsigned m : {1u, 2u, 3u, 4u, 5u}) {
        CAPTURE(m);
        check_axioms_exhaustive(m);
    }
}

TEST_CASE("sampled field axioms for larger m") {
    std::mt19937_64 rng(7);
    for (unsigned m = 6; m <= 16; ++m) {
        CAPTURE(m);
        const Field f(m);
        std::uniform_int_distribution<std::uint32_t> pick(0, f.size() - 1);
        for (int t = 0; t < 2000; ++t) {
            const auto a = static_cast<Element>(pick(rng));
            const auto b = static_cast<Element>(pick(rng));
            const auto c = static_cast<Element>(pick(rng));
            REQUIRE(f.mul(a, b) == schoolbook_mul(a, b, m, f.spec().poly));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.mul(a, Field::add(b, c)) == Field::add(f.mul(a, b), f.mul(a, c)));
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
        }
    }
}

TEST_CASE("pow, log and antilog are consistent") {
    const Field f(4);
    for (Element a = 1; a < 16; ++a) {
        CHECK(f.antilog(f.log(a)) == a);
        Element acc = 1;
        for (unsigned e = 0; e < 20; ++e) {
            CHECK(f.pow(a, e) == acc);
            acc = f.mul(acc, a);
        }
    }
    CHECK(f.pow(0, 0) == 1);
    CHECK(f.pow(0, 3) == 0);
}

TEST_CASE("every element of the multiplicative group is reached from x") {
    for (unsigned m = 2; m <= 12; ++m) {
        const Field f(m);
        std::vector<bool> seen(f.size(), false);
        for (std::uint32_t k = 0; k + 1 < f.size(); ++k) seen[f.antilog(k)] = true;
        for (std::uint32_t a = 1; a < f.size(); ++a) CHECK(seen[a]);
    }
}

TEST_CASE("invalid fields are rejected") {
    auto code_of = [](FieldSpec s) {
        try {
            Field f(s);
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::Parse;
    };
    CHECK(code_of({0, 0x3}) == Errc::InvalidField);
    CHECK(code_of({17, 0x3}) == Errc::InvalidField);
    CHECK(code_of({4, 0x7}) == Errc::InvalidField);    // wrong degree
    CHECK(code_of({4, 0x12}) == Errc::InvalidField);   // no constant term
    CHECK(code_of({4, 0x1f}) == Errc::InvalidField);   // irreducible, order 5
    CHECK(code_of({4, 0x15}) == Errc::InvalidField);   // reducible
}

TEST_CASE("zero has no inverse") {
    const Field f(4);
    CHECK_THROWS_AS(f.inv(0), Error);
    try {
        (void)f.inv(0);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ZeroInverse);
    }
}

TEST_CASE("default polynomials are primitive for every supported degree") {
    for (unsigned m = 1; m <= 16; ++m) {
        CAPTURE(m);
        CHECK_NOTHROW(Field(default_field_spec(m)));
    }
    CHECK(default_primitive_poly(4) == 0x13);
}
