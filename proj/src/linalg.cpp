#include "cde/linalg.hpp"

#include <string>
#include <utility>

#include "cde/errors.hpp"

namespace cde {

namespace {

// Reduces m in place to reduced row echelon form and returns the pivot
// column of each pivot row.
std::vector<std::size_t> reduce(const Field& f, FieldMatrix& m, std::size_t col_limit) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < col_limit && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        const Element scale = f.inv(m(r, c));
        for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), scale);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            const Element factor = m(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) ^= f.mul(factor, m(r, j));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::vector<Element> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols)
        raise(Errc::DimensionMismatch, "expected " + std::to_string(rows * cols) + " entries, got " +
                                           std::to_string(data_.size()));
}

FieldMatrix FieldMatrix::identity(std::size_t n) {
    FieldMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

FieldMatrix FieldMatrix::select_columns(std::span<const std::size_t> cols) const {
    FieldMatrix out(rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j) out(r, j) = (*this)(r, cols[j]);
    return out;
}

FieldMatrix FieldMatrix::select_rows(std::span<const std::size_t> rows) const {
    FieldMatrix out(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < cols_; ++c) out(i, c) = (*this)(rows[i], c);
    return out;
}

FieldMatrix FieldMatrix::first_rows(std::size_t n) const {
    FieldMatrix out(n, cols_);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    return out;
}

FieldMatrix FieldMatrix::transpose() const {
    FieldMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

FieldMatrix multiply(const Field& f, const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols() != b.rows())
        raise(Errc::DimensionMismatch, "cannot multiply " + std::to_string(a.rows()) + "x" +
                                           std::to_string(a.cols()) + " by " + std::to_string(b.rows()) +
                                           "x" + std::to_string(b.cols()));
    FieldMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Element aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) ^= f.mul(aik, b(k, j));
        }
    return out;
}

std::vector<Element> multiply(const Field& f, const FieldMatrix& a, std::span<const Element> x) {
    if (a.cols() != x.size())
        raise(Errc::DimensionMismatch, "vector length " + std::to_string(x.size()) + " does not match " +
                                           std::to_string(a.cols()) + " columns");
    std::vector<Element> out(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] ^= f.mul(a(i, j), x[j]);
    return out;
}

std::vector<Element> left_multiply(const Field& f, std::span<const Element> c, const FieldMatrix& m) {
    if (m.rows() != c.size())
        raise(Errc::DimensionMismatch, "vector length " + std::to_string(c.size()) + " does not match " +
                                           std::to_string(m.rows()) + " rows");
    std::vector<Element> out(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (c[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] ^= f.mul(c[i], m(i, j));
    }
    return out;
}

std::size_t rank(const Field& f, FieldMatrix m) { return reduce(f, m, m.cols()).size(); }

FieldMatrix invert(const Field& f, const FieldMatrix& m) {
    if (m.rows() != m.cols())
        raise(Errc::DimensionMismatch, "cannot invert a non-square " + std::to_string(m.rows()) + "x" +
                                           std::to_string(m.cols()) + " matrix");
    const std::size_t n = m.rows();
    FieldMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    if (reduce(f, aug, n).size() != n) raise(Errc::Singular, "matrix is not invertible");
    FieldMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return out;
}

std::vector<Element> solve(const Field& f, const FieldMatrix& m, std::span<const Element> rhs) {
    if (rhs.size() != m.rows())
        raise(Errc::DimensionMismatch, "right-hand side has " + std::to_string(rhs.size()) +
                                           " entries for " + std::to_string(m.rows()) + " rows");
    const std::size_t n = m.cols();
    FieldMatrix aug(m.rows(), n + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n) = rhs[i];
    }
    const auto pivots = reduce(f, aug, n);
    if (pivots.size() != n)
        raise(Errc::Singular, "system has rank " + std::to_string(pivots.size()) + " < " + std::to_string(n) +
                                  " unknowns");
    for (std::size_t i = n; i < m.rows(); ++i)
        if (aug(i, n) != 0) raise(Errc::Inconsistent, "right-hand side is not in the column space");
    std::vector<Element> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
    return x;
}

std::vector<Element> left_kernel_vector(const Field& f, const FieldMatrix& m) {
    // c m = 0  <=>  m^T c^T = 0.
    FieldMatrix t = m.transpose();
    const std::size_t n = t.cols();
    const auto pivots = reduce(f, t, n);
    if (n - pivots.size() != 1)
        raise(Errc::DegenerateKernel, "left kernel has dimension " + std::to_string(n - pivots.size()));

    std::size_t free_col = n;
    for (std::size_t c = 0, p = 0; c < n; ++c) {
        if (p < pivots.size() && pivots[p] == c) {
            ++p;
        } else {
            free_col = c;
            break;
        }
    }
    std::vector<Element> c(n, 0);
    c[free_col] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) c[pivots[r]] = t(r, free_col);  // char 2: -x == x

    for (Element v : c) {
        if (v == 0) continue;
        const Element scale = f.inv(v);
        for (auto& e : c) e = f.mul(e, scale);
        break;
    }
    return c;
}

}  // namespace cde
