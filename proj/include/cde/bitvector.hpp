#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace cde {

/// Fixed-width binary vector. Bit 0 is the first packet (leftmost column of
/// the distribution matrix).
class BitVector {
public:
    using Storage = boost::dynamic_bitset<std::uint64_t>;

    BitVector() = default;
    explicit BitVector(std::size_t width) : bits_(width) {}
    BitVector(std::initializer_list<int> bits) : bits_(bits.size()) {
        std::size_t i = 0;
        for (int b : bits) bits_[i++] = b != 0;
    }

    static BitVector from_bits(const std::vector<int>& bits) {
        BitVector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) v.bits_[i] = bits[i] != 0;
        return v;
    }

    static BitVector ones(std::size_t width) {
        BitVector v(width);
        v.bits_.set();
        return v;
    }

    static BitVector unit(std::size_t width, std::size_t pos) {
        BitVector v(width);
        v.bits_.set(pos);
        return v;
    }

    std::size_t width() const noexcept { return bits_.size(); }
    std::size_t weight() const noexcept { return bits_.count(); }
    bool none() const noexcept { return bits_.none(); }
    bool test(std::size_t i) const { return bits_.test(i); }
    void set(std::size_t i, bool value = true) { bits_.set(i, value); }

    /// Support containment: every set bit of `other` is also set here.
    bool covers(const BitVector& other) const { return other.bits_.is_subset_of(bits_); }

    /// Ascending indices of set bits.
    std::vector<std::size_t> positions() const {
        std::vector<std::size_t> out;
        out.reserve(bits_.count());
        for (auto i = bits_.find_first(); i != Storage::npos; i = bits_.find_next(i))
            out.push_back(i);
        return out;
    }

    std::vector<int> to_bits() const {
        std::vector<int> out(bits_.size());
        for (std::size_t i = 0; i < bits_.size(); ++i) out[i] = bits_[i] ? 1 : 0;
        return out;
    }

    /// "110010..." in column order.
    std::string str() const {
        std::string s(bits_.size(), '0');
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i]) s[i] = '1';
        return s;
    }

    BitVector& operator|=(const BitVector& o) { bits_ |= o.bits_; return *this; }
    BitVector& operator&=(const BitVector& o) { bits_ &= o.bits_; return *this; }
    BitVector operator~() const { BitVector v; v.bits_ = ~bits_; return v; }

    friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
    friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
    friend bool operator==(const BitVector& a, const BitVector& b) { return a.bits_ == b.bits_; }
    friend bool operator<(const BitVector& a, const BitVector& b) { return a.bits_ < b.bits_; }

private:
    Storage bits_;
};

}  // namespace cde
