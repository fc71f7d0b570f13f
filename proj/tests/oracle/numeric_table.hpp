#pragma once

// Floating-point character table by Burnside's method: the central
// characters are the common eigenvectors of the class multiplication
// matrices, found here by diagonalizing one random real combination with
// Eigen. Independent of the modular algorithm in the library.

#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "brute_group.hpp"

namespace oracle {

using Complex = std::complex<double>;

struct NumericTable {
  std::vector<std::size_t> class_sizes;       // classes of the BruteGroup, in its order
  std::vector<std::vector<Complex>> rows;     // chi(g_k)
  std::vector<std::size_t> degrees;
  std::vector<std::size_t> kernel_orders;
  std::vector<std::size_t> codegrees;
};

inline NumericTable numeric_table(const BruteGroup& g, unsigned seed = 7) {
  const int r = static_cast<int>(g.classes.size());
  const double n = static_cast<double>(g.order());

  // a[i](j, k) = #{x in C_i : x^-1 g_k in C_j}
  std::vector<Eigen::MatrixXd> a(r, Eigen::MatrixXd::Zero(r, r));
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      int gk = g.classes[k].front();
      for (int x : g.classes[i]) a[i](g.class_of[g.mul(g.inv(x), gk)], k) += 1.0;
    }

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coeff(0.5, 1.5);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(r, r);
  for (int i = 0; i < r; ++i) m += coeff(rng) * a[i];
  // A central character w satisfies (A_i w)_j = w_i w_j: a common right eigenvector.
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m);

  NumericTable t;
  for (const auto& c : g.classes) t.class_sizes.push_back(c.size());
  for (int e = 0; e < r; ++e) {
    Eigen::VectorXcd w = solver.eigenvectors().col(e);
    w /= w(0);  // the identity class has central character 1
    double norm = 0;
    for (int k = 0; k < r; ++k) norm += std::norm(w(k)) / static_cast<double>(t.class_sizes[k]);
    double degree = std::sqrt(n / norm);
    std::vector<Complex> row(r);
    for (int k = 0; k < r; ++k) row[k] = degree * w(k) / static_cast<double>(t.class_sizes[k]);
    auto d = static_cast<std::size_t>(std::llround(degree));
    std::size_t ker = 0;
    for (int k = 0; k < r; ++k)
      if (std::abs(row[k] - Complex(degree, 0)) < 1e-6) ker += t.class_sizes[k];
    t.rows.push_back(row);
    t.degrees.push_back(d);
    t.kernel_orders.push_back(ker);
    t.codegrees.push_back(g.order() / ker / d);
  }
  return t;
}

inline std::set<std::size_t> numeric_cod_all(const NumericTable& t) {
  return {t.codegrees.begin(), t.codegrees.end()};
}

inline std::set<std::size_t> numeric_cod_nonlinear(const NumericTable& t) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < t.degrees.size(); ++i)
    if (t.degrees[i] > 1) out.insert(t.codegrees[i]);
  return out;
}

} // namespace oracle
