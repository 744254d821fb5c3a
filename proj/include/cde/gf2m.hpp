#pragma once

#include <cstdint>
#include <vector>

namespace cde {

/// Field element of GF(2^m), m <= 16; the value is the polynomial-basis
/// bit pattern.
using Element = std::uint16_t;

struct FieldSpec {
    unsigned m = 4;
    std::uint32_t poly = 0x13;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Built-in primitive polynomial for degree m (1..16). m = 4 gives
/// x^4 + x + 1.
std::uint32_t default_primitive_poly(unsigned m);

FieldSpec default_field_spec(unsigned m);

/// GF(2^m) with log/antilog tables. Immutable after construction.
class Field {
public:
    /// Throws Error(InvalidField) when m is out of range or `poly` is not a
    /// primitive polynomial of degree m.
    explicit Field(FieldSpec spec);
    explicit Field(unsigned m) : Field(default_field_spec(m)) {}

    const FieldSpec& spec() const noexcept { return spec_; }
    unsigned m() const noexcept { return spec_.m; }
    std::uint32_t size() const noexcept { return std::uint32_t{1} << spec_.m; }
    bool contains(std::uint32_t value) const noexcept { return value < size(); }

    static Element add(Element a, Element b) noexcept { return a ^ b; }
    static Element sub(Element a, Element b) noexcept { return a ^ b; }

    Element mul(Element a, Element b) const noexcept {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }

    /// Throws Error(ZeroInverse) for a == 0.
    Element inv(Element a) const;

    Element div(Element a, Element b) const { return mul(a, inv(b)); }

    Element pow(Element a, unsigned e) const noexcept;

    /// Discrete log base x; a must be nonzero.
    unsigned log(Element a) const noexcept { return log_[a]; }
    /// x^k for 0 <= k < 2(2^m - 1).
    Element antilog(unsigned k) const noexcept { return exp_[k]; }

private:
    FieldSpec spec_;
    std::vector<Element> exp_;   // doubled so mul needs no modulo
    std::vector<std::uint32_t> log_;
};

}  // namespace cde
