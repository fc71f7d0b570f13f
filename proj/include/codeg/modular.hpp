#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "numtheory.hpp"

namespace codeg::modular {

/// Dense matrix over F_p, row-major.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  std::uint64_t& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::uint64_t operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Reduces `m` in place to reduced row echelon form and returns the pivot columns.
inline std::vector<std::size_t> rref(Matrix& m, std::uint64_t p) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t sel = row;
    while (sel < m.rows && m(sel, col) == 0) ++sel;
    if (sel == m.rows) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(sel, j), m(row, j));
    auto inv = inv_mod(m(row, col), p);
    for (std::size_t j = 0; j < m.cols; ++j) m(row, j) = mul_mod(m(row, j), inv, p);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || m(i, col) == 0) continue;
      auto f = m(i, col);
      for (std::size_t j = 0; j < m.cols; ++j)
        m(i, j) = (m(i, j) + p - mul_mod(f, m(row, j), p)) % p;
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Basis of {x : m x = 0}.
inline std::vector<std::vector<std::uint64_t>> nullspace(Matrix m, std::uint64_t p) {
  auto pivots = rref(m, p);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint64_t> v(m.cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = (p - m(r, free)) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Characteristic polynomial det(xI - a), coefficients low to high, via
/// reduction to upper Hessenberg form.
inline std::vector<std::uint64_t> charpoly(Matrix h, std::uint64_t p) {
  const auto n = h.rows;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t i = j + 1;
    while (i < n && h(i, j) == 0) ++i;
    if (i == n) continue;
    if (i != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(i, c), h(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, i), h(r, j + 1));
    }
    auto inv = inv_mod(h(j + 1, j), p);
    for (std::size_t k = j + 2; k < n; ++k) {
      if (h(k, j) == 0) continue;
      auto u = mul_mod(h(k, j), inv, p);
      for (std::size_t c = 0; c < n; ++c) h(k, c) = (h(k, c) + p - mul_mod(u, h(j + 1, c), p)) % p;
      for (std::size_t r = 0; r < n; ++r) h(r, j + 1) = (h(r, j + 1) + mul_mod(u, h(r, k), p)) % p;
    }
  }

  // polys[m] is the characteristic polynomial of the leading m x m block.
  std::vector<std::vector<std::uint64_t>> polys(n + 1);
  polys[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    auto& pm = polys[m];
    pm.assign(m + 1, 0);
    const auto& prev = polys[m - 1];
    auto diag = h(m - 1, m - 1);
    for (std::size_t k = 0; k < prev.size(); ++k) {
      pm[k + 1] = (pm[k + 1] + prev[k]) % p;
      pm[k] = (pm[k] + p - mul_mod(diag, prev[k], p)) % p;
    }
    std::uint64_t sub = 1;
    for (std::size_t i = 1; i < m; ++i) {
      sub = mul_mod(sub, h(m - i, m - i - 1), p);
      auto coeff = mul_mod(h(m - i - 1, m - 1), sub, p);
      if (coeff == 0) continue;
      const auto& q = polys[m - i - 1];
      for (std::size_t k = 0; k < q.size(); ++k) pm[k] = (pm[k] + p - mul_mod(coeff, q[k], p)) % p;
    }
  }
  return polys[n];
}

inline std::uint64_t evaluate(const std::vector<std::uint64_t>& poly, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (std::size_t k = poly.size(); k-- > 0;) acc = (mul_mod(acc, x, p) + poly[k]) % p;
  return acc;
}

/// Roots in F_p with multiplicity, found by exhaustive evaluation and deflation.
inline std::vector<std::pair<std::uint64_t, std::size_t>> roots(std::vector<std::uint64_t> poly, std::uint64_t p) {
  std::vector<std::pair<std::uint64_t, std::size_t>> found;
  for (std::uint64_t x = 0; x < p && poly.size() > 1; ++x) {
    std::size_t mult = 0;
    while (poly.size() > 1 && evaluate(poly, x, p) == 0) {
      // synthetic division by (t - x)
      std::vector<std::uint64_t> q(poly.size() - 1);
      std::uint64_t carry = 0;
      for (std::size_t k = poly.size(); k-- > 1;) {
        carry = (poly[k] + mul_mod(carry, x, p)) % p;
        q[k - 1] = carry;
      }
      poly = std::move(q);
      ++mult;
    }
    if (mult) found.emplace_back(x, mult);
  }
  return found;
}

} // namespace codeg::modular
