#include "cde/gf2m.hpp"

#include <array>
#include <string>

#include "cde/errors.hpp"

namespace cde {

namespace {

constexpr std::array<std::uint32_t, 17> kPrimitivePolys = {
    0,
    0x3,      // x + 1
    0x7,      // x^2 + x + 1
    0xb,      // x^3 + x + 1
    0x13,     // x^4 + x + 1
    0x25,     // x^5 + x^2 + 1
    0x43,     // x^6 + x + 1
    0x89,     // x^7 + x^3 + 1
    0x11d,    // x^8 + x^4 + x^3 + x^2 + 1
    0x211,    // x^9 + x^4 + 1
    0x409,    // x^10 + x^3 + 1
    0x805,    // x^11 + x^2 + 1
    0x1053,   // x^12 + x^6 + x^4 + x + 1
    0x201b,   // x^13 + x^4 + x^3 + x + 1
    0x4443,   // x^14 + x^10 + x^6 + x + 1
    0x8003,   // x^15 + x + 1
    0x1100b,  // x^16 + x^12 + x^3 + x + 1
};

}  // namespace

std::uint32_t default_primitive_poly(unsigned m) {
    if (m < 1 || m > 16) raise(Errc::InvalidField, "m must be in [1, 16], got " + std::to_string(m));
    return kPrimitivePolys[m];
}

FieldSpec default_field_spec(unsigned m) { return FieldSpec{m, default_primitive_poly(m)}; }

Field::Field(FieldSpec spec) : spec_(spec) {
    const unsigned m = spec.m;
    if (m < 1 || m > 16) raise(Errc::InvalidField, "m must be in [1, 16], got " + std::to_string(m));
    const std::uint32_t q = std::uint32_t{1} << m;
    if ((spec.poly >> m) != 1 || (spec.poly & 1) == 0)
        raise(Errc::InvalidField, "polynomial " + std::to_string(spec.poly) +
                                      " does not have degree " + std::to_string(m) +
                                      " with nonzero constant term");

    const std::uint32_t order = q - 1;
    exp_.assign(2 * order, 0);
    log_.assign(q, 0);

    // Walk the powers of x; a primitive polynomial visits every nonzero
    // element exactly once before returning to 1.
    std::uint32_t b = 1;
    for (std::uint32_t k = 0; k < order; ++k) {
        if (k > 0 && b == 1)
            raise(Errc::InvalidField, "polynomial " + std::to_string(spec.poly) +
                                          " is not primitive: x has order " + std::to_string(k));
        exp_[k] = static_cast<Element>(b);
        log_[b] = k;
        b <<= 1;
        if (b & q) b ^= spec.poly;
    }
    if (b != 1)
        raise(Errc::InvalidField, "polynomial " + std::to_string(spec.poly) + " is not primitive");
    for (std::uint32_t k = order; k < 2 * order; ++k) exp_[k] = exp_[k - order];
}

Element Field::inv(Element a) const {
    if (a == 0) raise(Errc::ZeroInverse, "zero has no multiplicative inverse");
    const std::uint32_t order = size() - 1;
    return exp_[(order - log_[a]) % order];
}

Element Field::pow(Element a, unsigned e) const noexcept {
    if (e == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t order = size() - 1;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * e) % order];
}

}  // namespace cde
