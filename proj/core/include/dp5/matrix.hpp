#pragma once

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "dp5/errors.hpp"
#include "dp5/mpoly.hpp"

namespace dp5 {

// Dense row-major matrix over a commutative ring.
template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const K& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<K> data_;
};

// Division-free determinant by dynamic programming over column subsets,
// O(2^n n) ring operations. Valid over any commutative ring.
template <class K>
K det_expansion(const Matrix<K>& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw DomainError("determinant of a non-square matrix");
  if (n == 0) throw DomainError("determinant of an empty matrix");
  if (n > 20) throw CapExceeded("matrix dimension for expansion", n);
  const K zero = zero_like(m(0, 0));
  std::vector<K> dp(std::size_t{1} << n, zero);
  std::vector<char> live(dp.size(), 0);
  dp[0] = one_like(m(0, 0));
  live[0] = 1;
  for (std::size_t mask = 0; mask + 1 < dp.size(); ++mask) {
    if (!live[mask]) continue;
    const std::size_t row = static_cast<std::size_t>(std::popcount(mask));
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (std::size_t{1} << j)) continue;
      if (is_zero(m(row, j))) continue;
      const bool odd = std::popcount(mask >> (j + 1)) & 1;
      K t = m(row, j) * dp[mask];
      const std::size_t next = mask | (std::size_t{1} << j);
      if (odd) dp[next] -= t; else dp[next] += t;
      live[next] = 1;
    }
    dp[mask] = zero;
  }
  return dp.back();
}

// Fraction-free Bareiss elimination; needs exact division in K.
template <class K>
K det_bareiss(Matrix<K> m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw DomainError("determinant of a non-square matrix");
  if (n == 0) throw DomainError("determinant of an empty matrix");
  K prev = one_like(m(0, 0));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m(k, k))) {
      std::size_t p = k + 1;
      while (p < n && is_zero(m(p, k))) ++p;
      if (p == n) return zero_like(m(0, 0));
      m.swap_rows(k, p);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        K t = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        m(i, j) = t / prev;
      }
      m(i, k) = zero_like(prev);
    }
    prev = m(k, k);
  }
  K d = m(n - 1, n - 1);
  return negate ? -d : d;
}

// Gaussian elimination over a field.
template <class K>
K det_gauss(Matrix<K> m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw DomainError("determinant of a non-square matrix");
  if (n == 0) throw DomainError("determinant of an empty matrix");
  K d = one_like(m(0, 0));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && is_zero(m(p, k))) ++p;
    if (p == n) return zero_like(d);
    if (p != k) {
      m.swap_rows(k, p);
      d = -d;
    }
    d = d * m(k, k);
    const K inv = one_like(d) / m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(m(i, k))) continue;
      const K f = m(i, k) * inv;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return d;
}

// Picks a strategy: expansion for small or division-hostile entries,
// Bareiss for polynomial entries, elimination for fields.
template <class K>
K determinant(const Matrix<K>& m) {
  if (m.rows() <= 4) return det_expansion(m);
  if constexpr (is_mpoly_v<K>) {
    return m.rows() <= 8 ? det_expansion(m) : det_bareiss(m);
  } else {
    return det_gauss(m);
  }
}

// Reduced row echelon form in place; returns pivot columns.
template <class K>
std::vector<std::size_t> rref(Matrix<K>& m) {
  std::vector<std::size_t> pivots;
  if (m.rows() == 0 || m.cols() == 0) return pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(row, p);
    const K inv = one_like(m(row, col)) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const K f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
std::size_t rank(Matrix<K> m) { return rref(m).size(); }

// Right kernel basis; one vector per free column in increasing order, with
// a 1 in that column.
template <class K>
std::vector<std::vector<K>> kernel(Matrix<K> m) {
  if (m.rows() == 0) throw DomainError("kernel of a matrix with no rows");
  const auto pivots = rref(m);
  const K zero = zero_like(m(0, 0));
  const K one = one_like(zero);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<K>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<K> v(m.cols(), zero);
    v[f] = one;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace dp5
