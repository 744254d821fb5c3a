#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cde/gf2m.hpp"

namespace cde {

/// Dense row-major matrix of field elements. The field is supplied to each
/// operation rather than stored.
class FieldMatrix {
public:
    FieldMatrix() = default;
    FieldMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    FieldMatrix(std::size_t rows, std::size_t cols, std::vector<Element> entries);

    static FieldMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Element operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    const std::vector<Element>& entries() const noexcept { return data_; }

    FieldMatrix select_columns(std::span<const std::size_t> cols) const;
    FieldMatrix select_rows(std::span<const std::size_t> rows) const;
    FieldMatrix first_rows(std::size_t n) const;
    FieldMatrix transpose() const;

    friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Element> data_;
};

FieldMatrix multiply(const Field& f, const FieldMatrix& a, const FieldMatrix& b);
std::vector<Element> multiply(const Field& f, const FieldMatrix& a, std::span<const Element> x);
/// Row vector times matrix.
std::vector<Element> left_multiply(const Field& f, std::span<const Element> c, const FieldMatrix& m);

/// Gaussian elimination, pivoting on the first nonzero entry of each column
/// scanning top-to-bottom, columns left-to-right.
std::size_t rank(const Field& f, FieldMatrix m);

/// Throws Error(DimensionMismatch) if not square, Error(Singular) if rank deficient.
FieldMatrix invert(const Field& f, const FieldMatrix& m);

/// Unique x with m x = rhs. Throws Singular when m lacks full column rank,
/// Inconsistent when rhs is outside the column space.
std::vector<Element> solve(const Field& f, const FieldMatrix& m, std::span<const Element> rhs);

/// Nonzero c with c m = 0 and first nonzero entry 1. Throws DegenerateKernel
/// unless the left null space is exactly one-dimensional.
std::vector<Element> left_kernel_vector(const Field& f, const FieldMatrix& m);

}  // namespace cde
