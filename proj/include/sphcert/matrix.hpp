#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "sphcert/rational.hpp"

namespace sphcert {

inline bool scalar_is_zero(const Rat& x) { return x == 0; }
inline bool scalar_is_zero(const Int& x) { return x == 0; }

template <typename T>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(size_t rows, size_t cols, T fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(size_t n, T one = T(1)) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    T& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }
    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix multiply: shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (scalar_is_zero(aik)) continue;
                for (size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix c = a;
        for (size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
        return c;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix c = a;
        for (size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
        return c;
    }
    friend Matrix operator*(const T& s, const Matrix& a) {
        Matrix c = a;
        for (auto& x : c.data_) x = s * x;
        return c;
    }

    std::vector<T> row(size_t i) const { return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = i + 1; j < cols_; ++j)
                if (!((*this)(i, j) == (*this)(j, i))) return false;
        return true;
    }

  private:
    size_t rows_, cols_;
    std::vector<T> data_;
};

using QMat = Matrix<Rat>;
using ZMat = Matrix<Int>;

// In-place reduced row-echelon form over a field; returns pivot columns.
// Entries are re-canonicalized by the scalar type after every pivot step.
template <typename T>
std::vector<size_t> rref_in_place(Matrix<T>& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t p = r;
        while (p < m.rows() && scalar_is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (size_t j = c; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        T inv = T(1) / m(r, c);
        for (size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || scalar_is_zero(m(i, c))) continue;
            T f = m(i, c);
            for (size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <typename T>
std::pair<Matrix<T>, std::vector<size_t>> rref(const Matrix<T>& m) {
    Matrix<T> r = m;
    auto piv = rref_in_place(r);
    return {std::move(r), std::move(piv)};
}

template <typename T>
size_t rank(const Matrix<T>& m) {
    Matrix<T> r = m;
    return rref_in_place(r).size();
}

template <typename T>
Matrix<T> inverse(const Matrix<T>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
    size_t n = m.rows();
    Matrix<T> aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = T(1);
    }
    auto piv = rref_in_place(aug);
    if (piv.size() != n || piv.back() != n - 1) throw std::domain_error("inverse: singular matrix");
    Matrix<T> inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

template <typename T>
std::vector<T> mat_vec(const Matrix<T>& a, const std::vector<T>& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("mat_vec: shape mismatch");
    std::vector<T> y(a.rows(), T());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            if (!scalar_is_zero(a(i, j))) y[i] += a(i, j) * x[j];
    return y;
}

}  // namespace sphcert
