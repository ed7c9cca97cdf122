#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mahler/errors.hpp"
#include "mahler/rational.hpp"

namespace mahler {

/// Dense row-major matrix over a ring with value semantics.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<long>(i * cols_),
                          data_.begin() + static_cast<long>((i + 1) * cols_));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidInput("matrix dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const T& x = a(i, l);
        if (is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (!is_zero(b(l, j))) c(i, j) += x * b(l, j);
        }
      }
    }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw InvalidInput("matrix-vector dimension mismatch");
    std::vector<T> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (!is_zero(v[j]) && !is_zero(a(i, j))) out[i] += a(i, j) * v[j];
    return out;
  }

  friend std::vector<T> operator*(const std::vector<T>& v, const Matrix& a) {
    if (a.rows_ != v.size()) throw InvalidInput("vector-matrix dimension mismatch");
    std::vector<T> out(a.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      if (is_zero(v[i])) continue;
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (!is_zero(a(i, j))) out[j] += v[i] * a(i, j);
    }
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Reduced row echelon form; pivots are the first nonzero entry of each
/// nonzero row, scanned left to right.
template <class T>
struct Echelon {
  Matrix<T> reduced;
  std::vector<std::size_t> pivots;
};

template <class T>
Echelon<T> rref(Matrix<T> m) {
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    std::size_t pivot = lead_row;
    while (pivot < m.rows() && is_zero(m(pivot, col))) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead_row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(lead_row, j));
    const T inv = T(1) / m(lead_row, col);
    for (std::size_t j = col; j < m.cols(); ++j)
      if (!is_zero(m(lead_row, j))) m(lead_row, j) = m(lead_row, j) * inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || is_zero(m(r, col))) continue;
      const T factor = m(r, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!is_zero(m(lead_row, j))) m(r, j) -= factor * m(lead_row, j);
    }
    pivots.push_back(col);
    ++lead_row;
  }
  return {std::move(m), std::move(pivots)};
}

/// Basis of the right nullspace, one vector per free column (ascending),
/// with that free column set to 1.
template <class T>
std::vector<std::vector<T>> nullspace(const Matrix<T>& m) {
  auto [r, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols());
    v[free] = T(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One solution of a x = b with free variables set to zero, or nullopt.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
  if (b.size() != a.rows()) throw InvalidInput("right-hand side size mismatch");
  Matrix<T> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto [r, pivots] = rref(std::move(aug));
  std::vector<T> x(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == a.cols()) return std::nullopt;
    x[pivots[i]] = r(i, a.cols());
  }
  return x;
}

/// Rank of a list of row vectors.
template <class T>
std::size_t rank_of(const std::vector<std::vector<T>>& rows, std::size_t width) {
  Matrix<T> m(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
  return rref(std::move(m)).pivots.size();
}

}  // namespace mahler
