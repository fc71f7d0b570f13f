#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "numtheory.hpp"

namespace codeg {

namespace detail {

using IntPoly = std::vector<std::int64_t>;  // coefficient of x^k at index k

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Exact division by a monic polynomial.
inline IntPoly poly_div_monic(IntPoly num, const IntPoly& den) {
  const auto dd = den.size() - 1;
  IntPoly quot(num.size() - dd, 0);
  for (std::size_t k = num.size(); k-- > dd;) {
    auto c = num[k];
    quot[k - dd] = c;
    if (c != 0)
      for (std::size_t j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
  }
  for (std::size_t k = 0; k < dd; ++k)
    if (num[k] != 0) throw Error("inexact cyclotomic division");
  return quot;
}

// Phi_n(x) = prod_{d | n} (x^d - 1)^mu(n/d).
inline IntPoly compute_cyclotomic_polynomial(std::uint64_t n) {
  IntPoly num{1}, den{1};
  for (auto d : divisors(n)) {
    int mu = moebius(n / d);
    if (mu == 0) continue;
    IntPoly factor(d + 1, 0);
    factor[0] = -1;
    factor[d] = 1;
    if (mu > 0)
      num = poly_mul(num, factor);
    else
      den = poly_mul(den, factor);
  }
  // den is +-monic up to sign; normalize both so that den is monic.
  if (den.back() < 0) {
    for (auto& c : den) c = -c;
    for (auto& c : num) c = -c;
  }
  return poly_div_monic(std::move(num), den);
}

} // namespace detail

/// Coefficients of the e-th cyclotomic polynomial, cached per conductor.
inline std::shared_ptr<const detail::IntPoly> cyclotomic_polynomial(std::uint64_t e) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::shared_ptr<const detail::IntPoly>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(e);
  if (it != cache.end()) return it->second;
  auto poly = std::make_shared<const detail::IntPoly>(detail::compute_cyclotomic_polynomial(e));
  cache.emplace(e, poly);
  return poly;
}

/// An element of Z[zeta_e], held as sum coeffs[k] * zeta_e^k for k < e.
///
/// The dense representation is not unique; canonical() reduces modulo the
/// e-th cyclotomic polynomial to the power basis 1, zeta, ..., zeta^(phi(e)-1),
/// where equality is decidable.
class CyclotomicInt {
public:
  CyclotomicInt() : CyclotomicInt(1) {}
  explicit CyclotomicInt(std::uint64_t conductor) : conductor_(conductor), coeffs_(conductor, 0) {
    if (conductor == 0) throw PreconditionError("conductor must be positive");
  }

  static CyclotomicInt integer(std::uint64_t conductor, std::int64_t value) {
    CyclotomicInt z(conductor);
    z.coeffs_[0] = value;
    return z;
  }

  /// zeta_e^k.
  static CyclotomicInt root_power(std::uint64_t conductor, std::int64_t k) {
    CyclotomicInt z(conductor);
    auto e = static_cast<std::int64_t>(conductor);
    z.coeffs_[static_cast<std::size_t>(((k % e) + e) % e)] = 1;
    return z;
  }

  static CyclotomicInt from_coefficients(std::vector<std::int64_t> coeffs) {
    CyclotomicInt z(coeffs.size());
    z.coeffs_ = std::move(coeffs);
    return z;
  }

  std::uint64_t conductor() const { return conductor_; }
  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }

  CyclotomicInt& operator+=(const CyclotomicInt& rhs) {
    align(rhs);
    auto other = rhs.embed(conductor_);
    for (std::size_t k = 0; k < conductor_; ++k) coeffs_[k] += other.coeffs_[k];
    return *this;
  }

  CyclotomicInt& operator-=(const CyclotomicInt& rhs) {
    align(rhs);
    auto other = rhs.embed(conductor_);
    for (std::size_t k = 0; k < conductor_; ++k) coeffs_[k] -= other.coeffs_[k];
    return *this;
  }

  friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
  friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }

  friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
    auto e = std::lcm(a.conductor_, b.conductor_);
    auto x = a.embed(e);
    auto y = b.embed(e);
    CyclotomicInt out(e);
    for (std::size_t i = 0; i < e; ++i) {
      if (x.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < e; ++j) {
        if (y.coeffs_[j] == 0) continue;
        auto k = i + j;
        if (k >= e) k -= e;
        out.coeffs_[k] += x.coeffs_[i] * y.coeffs_[j];
      }
    }
    return out;
  }

  friend CyclotomicInt operator*(std::int64_t s, CyclotomicInt a) {
    for (auto& c : a.coeffs_) c *= s;
    return a;
  }

  /// Complex conjugate: zeta^k -> zeta^-k.
  CyclotomicInt conj() const {
    CyclotomicInt out(conductor_);
    for (std::size_t k = 0; k < conductor_; ++k) out.coeffs_[k == 0 ? 0 : conductor_ - k] = coeffs_[k];
    return out;
  }

  /// Galois image under zeta -> zeta^j with gcd(j, e) = 1.
  CyclotomicInt galois(std::uint64_t j) const {
    CyclotomicInt out(conductor_);
    for (std::size_t k = 0; k < conductor_; ++k) out.coeffs_[(k * j) % conductor_] += coeffs_[k];
    return out;
  }

  /// The same number written over a multiple of the conductor.
  CyclotomicInt embed(std::uint64_t new_conductor) const {
    if (new_conductor % conductor_ != 0) throw PreconditionError("embedding needs a multiple of the conductor");
    if (new_conductor == conductor_) return *this;
    auto step = new_conductor / conductor_;
    CyclotomicInt out(new_conductor);
    for (std::size_t k = 0; k < conductor_; ++k) out.coeffs_[k * step] = coeffs_[k];
    return out;
  }

  /// Coordinates in the power basis of Q(zeta_e), length phi(e).
  std::vector<std::int64_t> canonical() const {
    auto phi_poly = cyclotomic_polynomial(conductor_);
    const auto deg = phi_poly->size() - 1;
    auto work = coeffs_;
    for (std::size_t k = work.size(); k-- > deg;) {
      auto c = work[k];
      if (c == 0) continue;
      for (std::size_t j = 0; j <= deg; ++j) work[k - deg + j] -= c * (*phi_poly)[j];
    }
    work.resize(deg);
    return work;
  }

  bool is_zero() const {
    auto c = canonical();
    return std::all_of(c.begin(), c.end(), [](auto v) { return v == 0; });
  }

  std::optional<std::int64_t> to_integer() const {
    auto c = canonical();
    for (std::size_t k = 1; k < c.size(); ++k)
      if (c[k] != 0) return std::nullopt;
    return c[0];
  }

  bool is_rational_integer() const { return to_integer().has_value(); }

  std::complex<double> evaluate() const {
    std::complex<double> sum = 0;
    for (std::size_t k = 0; k < conductor_; ++k) {
      if (coeffs_[k] == 0) continue;
      double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(conductor_);
      sum += static_cast<double>(coeffs_[k]) * std::polar(1.0, angle);
    }
    return sum;
  }

  /// Canonical form printed with E(e) for zeta_e, e.g. "E(4)", "-1", "2*E(8)+E(8)^3".
  std::string to_string() const {
    auto c = canonical();
    std::string out;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      std::string term;
      auto mag = c[k] < 0 ? -c[k] : c[k];
      if (k == 0) {
        term = std::to_string(mag);
      } else {
        if (mag != 1) term = std::to_string(mag) + "*";
        term += "E(" + std::to_string(conductor_) + ")";
        if (k > 1) term += "^" + std::to_string(k);
      }
      if (out.empty())
        out = (c[k] < 0 ? "-" : "") + term;
      else
        out += (c[k] < 0 ? "-" : "+") + term;
    }
    return out.empty() ? "0" : out;
  }

  friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
    if (a.conductor_ == b.conductor_) return a.canonical() == b.canonical();
    auto e = std::lcm(a.conductor_, b.conductor_);
    return a.embed(e).canonical() == b.embed(e).canonical();
  }

private:
  void align(const CyclotomicInt& rhs) {
    if (rhs.conductor_ != conductor_) *this = embed(std::lcm(conductor_, rhs.conductor_));
  }

  std::uint64_t conductor_;
  std::vector<std::int64_t> coeffs_;
};

} // namespace codeg
