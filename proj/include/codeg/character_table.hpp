#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "cyclotomic.hpp"
#include "group.hpp"
#include "modular.hpp"

namespace codeg {

/// Exact irreducible characters of a group.
///
/// Rows are irreducible characters, columns follow group->classes(). Values
/// are written over the conductor e = exp(G). Row 0 is the principal
/// character; the remaining rows are sorted by degree and then by the
/// canonical form of their values.
struct CharacterTable {
  GroupPtr group;
  std::uint64_t conductor = 1;
  std::uint64_t modulus = 0;  // prime used by the modular split
  std::vector<std::uint64_t> degrees;
  std::vector<std::vector<CyclotomicInt>> values;
  std::vector<Subgroup> kernels;

  std::size_t size() const { return degrees.size(); }
  const CyclotomicInt& operator()(std::size_t row, std::size_t cls) const { return values[row][cls]; }
};

namespace detail {

/// (M_i)_{jk} = #{x in C_i : x^-1 g_k in C_j}, i.e. the structure constant a_ijk.
inline modular::Matrix class_matrix(const Group& g, std::size_t i, std::uint64_t p) {
  const auto r = g.class_count();
  modular::Matrix m(r, r);
  for (std::size_t k = 0; k < r; ++k) {
    auto gk = g.classes()[k].representative;
    for (auto x : g.classes()[i].members) {
      auto j = g.class_of(g.mul(g.inv(x), gk));
      m(j, k) += 1;
    }
  }
  for (auto& v : m.data) v %= p;
  return m;
}

// A subspace given by rows in reduced echelon form.
struct Space {
  std::vector<std::vector<std::uint64_t>> basis;
  std::vector<std::size_t> pivots;
};

inline Space make_space(std::vector<std::vector<std::uint64_t>> vectors, std::uint64_t p) {
  const auto len = vectors.front().size();
  modular::Matrix m(vectors.size(), len);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < len; ++j) m(i, j) = vectors[i][j];
  auto pivots = modular::rref(m, p);
  Space s;
  s.pivots = pivots;
  for (std::size_t i = 0; i < pivots.size(); ++i)
    s.basis.emplace_back(m.data.begin() + static_cast<std::ptrdiff_t>(i * len),
                         m.data.begin() + static_cast<std::ptrdiff_t>((i + 1) * len));
  return s;
}

// Splits an invariant space into the eigenspaces of m restricted to it.
inline std::vector<Space> split_space(const Space& space, const modular::Matrix& m, std::uint64_t p) {
  const auto dim = space.basis.size();
  const auto r = m.rows;
  modular::Matrix restricted(dim, dim);
  for (std::size_t d = 0; d < dim; ++d) {
    const auto& v = space.basis[d];
    for (std::size_t c = 0; c < dim; ++c) {
      auto row = space.pivots[c];
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < r; ++k)
        if (v[k] != 0) acc = (acc + mul_mod(m(row, k), v[k], p)) % p;
      restricted(c, d) = acc;
    }
  }
  auto eigen = modular::roots(modular::charpoly(restricted, p), p);
  std::size_t total = 0;
  for (auto& [value, mult] : eigen) total += mult;
  if (total != dim) throw ModularSplitFailure("class matrix eigenvalues not in the prime field");
  if (eigen.size() == 1) return {space};

  std::vector<Space> parts;
  for (auto& [value, mult] : eigen) {
    auto shifted = restricted;
    for (std::size_t c = 0; c < dim; ++c) shifted(c, c) = (shifted(c, c) + p - value) % p;
    auto kernel = modular::nullspace(shifted, p);
    if (kernel.size() != mult) throw ModularSplitFailure("class matrix not diagonalizable modulo the prime");
    std::vector<std::vector<std::uint64_t>> vectors;
    for (const auto& coeffs : kernel) {
      std::vector<std::uint64_t> w(r, 0);
      for (std::size_t d = 0; d < dim; ++d) {
        if (coeffs[d] == 0) continue;
        for (std::size_t k = 0; k < r; ++k) w[k] = (w[k] + mul_mod(coeffs[d], space.basis[d][k], p)) % p;
      }
      vectors.push_back(std::move(w));
    }
    parts.push_back(make_space(std::move(vectors), p));
  }
  return parts;
}

inline bool row_less(const std::vector<CyclotomicInt>& a, const std::vector<CyclotomicInt>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    auto ca = a[k].canonical();
    auto cb = b[k].canonical();
    if (ca != cb) return ca < cb;
  }
  return false;
}

inline CharacterTable split_modulo(const GroupPtr& g, std::uint64_t p) {
  const auto r = g->class_count();
  const auto n = g->order();
  const auto e = g->exponent();
  const auto& classes = g->classes();

  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return classes[a].size() < classes[b].size(); });

  std::vector<std::vector<std::uint64_t>> unit(r, std::vector<std::uint64_t>(r, 0));
  for (std::size_t k = 0; k < r; ++k) unit[k][k] = 1;
  std::vector<Space> spaces{make_space(std::move(unit), p)};
  for (auto i : order) {
    if (std::all_of(spaces.begin(), spaces.end(), [](const Space& s) { return s.basis.size() == 1; })) break;
    if (i == 0) continue;  // identity class matrix is the identity
    auto m = class_matrix(*g, i, p);
    std::vector<Space> next;
    for (const auto& s : spaces) {
      if (s.basis.size() == 1) {
        next.push_back(s);
        continue;
      }
      for (auto& part : split_space(s, m, p)) next.push_back(std::move(part));
    }
    spaces = std::move(next);
  }
  if (spaces.size() != r) throw ModularSplitFailure("class algebra did not split into one-dimensional spaces");

  // Power maps: powers[k][j] = class of rep_k^j for j < ord(rep_k).
  std::vector<std::vector<std::size_t>> powers(r);
  for (std::size_t k = 0; k < r; ++k) {
    auto rep = classes[k].representative;
    Elem x = 0;
    for (std::uint64_t j = 0; j < classes[k].rep_order; ++j) {
      powers[k].push_back(g->class_of(x));
      x = g->mul(x, rep);
    }
  }

  const auto zeta = pow_mod(primitive_root(p), (p - 1) / e, p);
  std::uint64_t max_degree = 1;
  while ((max_degree + 1) * (max_degree + 1) <= n) ++max_degree;

  CharacterTable table;
  table.group = g;
  table.conductor = e;
  table.modulus = p;
  for (const auto& s : spaces) {
    auto v = s.basis.front();
    if (v[0] == 0) throw ModularSplitFailure("central character vanishes at the identity");
    auto scale = inv_mod(v[0], p);
    for (auto& x : v) x = mul_mod(x, scale, p);

    // d^2 = |G| / sum_k w_k w_k* / |C_k|
    std::uint64_t norm = 0;
    for (std::size_t k = 0; k < r; ++k) {
      auto term = mul_mod(mul_mod(v[k], v[g->inverse_class(k)], p), inv_mod(classes[k].size() % p, p), p);
      norm = (norm + term) % p;
    }
    if (norm == 0) throw ModularSplitFailure("degenerate central character");
    auto d2 = mul_mod(n % p, inv_mod(norm, p), p);
    std::uint64_t degree = 0;
    for (std::uint64_t d = 1; d <= max_degree; ++d) {
      if (mul_mod(d, d, p) == d2) {
        degree = d;
        break;
      }
    }
    if (degree == 0) throw ModularSplitFailure("no admissible degree square root");

    std::vector<std::uint64_t> modvals(r);
    for (std::size_t k = 0; k < r; ++k)
      modvals[k] = mul_mod(mul_mod(degree, v[k], p), inv_mod(classes[k].size() % p, p), p);

    // Lift: the eigenvalue zeta^t of rep_k occurs with multiplicity
    // (1/o) sum_j chi(rep_k^j) w^(-t j), w a primitive o-th root.
    std::vector<CyclotomicInt> row;
    row.reserve(r);
    for (std::size_t k = 0; k < r; ++k) {
      const auto o = classes[k].rep_order;
      const auto step = e / o;
      const auto w_inv = inv_mod(pow_mod(zeta, step, p), p);
      const auto o_inv = inv_mod(o % p, p);
      std::vector<std::int64_t> coeffs(e, 0);
      std::uint64_t total = 0;
      for (std::uint64_t t = 0; t < o; ++t) {
        std::uint64_t acc = 0;
        auto base = pow_mod(w_inv, t, p);
        std::uint64_t power = 1;
        for (std::uint64_t j = 0; j < o; ++j) {
          acc = (acc + mul_mod(modvals[powers[k][j]], power, p)) % p;
          power = mul_mod(power, base, p);
        }
        auto mult = mul_mod(acc, o_inv, p);
        if (mult > degree) throw ModularSplitFailure("lifted multiplicity out of range");
        coeffs[t * step] = static_cast<std::int64_t>(mult);
        total += mult;
      }
      if (total != degree) throw ModularSplitFailure("lifted multiplicities do not sum to the degree");
      row.push_back(CyclotomicInt::from_coefficients(std::move(coeffs)));
    }
    table.degrees.push_back(degree);
    table.values.push_back(std::move(row));
  }

  std::uint64_t square_sum = 0;
  for (auto d : table.degrees) square_sum += d * d;
  if (square_sum != n) throw ModularSplitFailure("degree squares do not sum to the group order");

  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  auto is_principal = [&](std::size_t i) {
    return table.degrees[i] == 1 && std::all_of(table.values[i].begin(), table.values[i].end(), [](const auto& z) {
             return z.coefficients()[0] == 1;
           });
  };
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (table.degrees[a] != table.degrees[b]) return table.degrees[a] < table.degrees[b];
    bool pa = is_principal(a), pb = is_principal(b);
    if (pa != pb) return pa;
    return row_less(table.values[a], table.values[b]);
  });
  CharacterTable sorted;
  sorted.group = g;
  sorted.conductor = e;
  sorted.modulus = p;
  for (auto i : perm) {
    sorted.degrees.push_back(table.degrees[i]);
    sorted.values.push_back(std::move(table.values[i]));
  }
  for (std::size_t i = 1; i < r; ++i)
    if (sorted.degrees[i - 1] == sorted.degrees[i] && sorted.values[i - 1] == sorted.values[i])
      throw ModularSplitFailure("duplicate irreducible characters");
  return sorted;
}

} // namespace detail

/// ker(chi_i): the classes where chi_i takes the value chi_i(1).
inline Subgroup character_kernel(const CharacterTable& t, std::size_t row) {
  const auto& g = t.group;
  std::vector<Elem> members;
  const auto& degree = t.values[row][0];
  for (std::size_t k = 0; k < g->class_count(); ++k)
    if (t.values[row][k] == degree)
      members.insert(members.end(), g->classes()[k].members.begin(), g->classes()[k].members.end());
  Subgroup kernel(g, std::move(members));
  if (!is_normal(kernel)) throw Error("character kernel is not a normal subgroup");
  return kernel;
}

/// Smallest prime l = 1 (mod e) with l > 2 sqrt(|G|), or the next one after `after`.
inline std::uint64_t next_split_prime(std::uint64_t exponent, std::uint64_t order, std::uint64_t after = 0) {
  for (std::uint64_t l = exponent + 1;; l += exponent) {
    if (l <= after || l * l <= 4 * order) continue;
    if (is_prime(l)) return l;
  }
}

inline CharacterTable character_table(const GroupPtr& g) {
  constexpr int kMaxPrimes = 64;
  std::uint64_t p = 0;
  for (int attempt = 0; attempt < kMaxPrimes; ++attempt) {
    p = next_split_prime(g->exponent(), g->order(), p);
    try {
      auto table = detail::split_modulo(g, p);
      for (std::size_t i = 0; i < table.size(); ++i) table.kernels.push_back(character_kernel(table, i));
      return table;
    } catch (const ModularSplitFailure&) {
      continue;
    }
  }
  throw ModularSplitFailure("no admissible prime split the class algebra of " + g->name());
}

/// acc += weight * a * b, all over the same conductor.
inline void accumulate_product(std::vector<std::int64_t>& acc, const CyclotomicInt& a, const CyclotomicInt& b,
                               std::int64_t weight) {
  const auto e = acc.size();
  const auto& x = a.coefficients();
  const auto& y = b.coefficients();
  std::vector<std::size_t> ny;
  for (std::size_t j = 0; j < e; ++j)
    if (y[j] != 0) ny.push_back(j);
  for (std::size_t i = 0; i < e; ++i) {
    if (x[i] == 0) continue;
    for (auto j : ny) {
      auto k = i + j;
      if (k >= e) k -= e;
      acc[k] += weight * x[i] * y[j];
    }
  }
}

/// sum_k |C_k| chi_a(g_k) conj(chi_b(g_k)), exact.
inline CyclotomicInt weighted_row_product(const CharacterTable& t, std::size_t a, std::size_t b) {
  std::vector<std::int64_t> acc(t.conductor, 0);
  const auto& classes = t.group->classes();
  for (std::size_t k = 0; k < classes.size(); ++k)
    accumulate_product(acc, t.values[a][k], t.values[b][k].conj(), static_cast<std::int64_t>(classes[k].size()));
  return CyclotomicInt::from_coefficients(std::move(acc));
}

/// sum_i chi_i(g_k) conj(chi_i(g_l)), exact.
inline CyclotomicInt column_product(const CharacterTable& t, std::size_t k, std::size_t l) {
  std::vector<std::int64_t> acc(t.conductor, 0);
  for (std::size_t i = 0; i < t.size(); ++i) accumulate_product(acc, t.values[i][k], t.values[i][l].conj(), 1);
  return CyclotomicInt::from_coefficients(std::move(acc));
}

/// Outcome of checking the defining identities of a character table.
struct TableValidity {
  bool degree_sum = false;        // sum chi(1)^2 = |G|
  bool principal_row = false;     // row 0 is identically 1
  bool first_column = false;      // chi(1) is the degree
  bool row_orthogonality = false;
  bool column_orthogonality = false;
  bool linear_count = false;      // #linear = |G : G'|
  bool kernels_normal = false;

  bool ok() const {
    return degree_sum && principal_row && first_column && row_orthogonality && column_orthogonality &&
           linear_count && kernels_normal;
  }
};

inline TableValidity validate_table(const CharacterTable& t) {
  TableValidity v;
  const auto& g = t.group;
  const auto n = static_cast<std::int64_t>(g->order());
  const auto& classes = g->classes();

  std::uint64_t sum = 0;
  for (auto d : t.degrees) sum += d * d;
  v.degree_sum = t.size() == classes.size() && sum == g->order();

  v.principal_row = std::all_of(t.values[0].begin(), t.values[0].end(),
                                [](const CyclotomicInt& x) { return x.to_integer() == std::optional<std::int64_t>(1); });
  v.first_column = true;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t.values[i][0].to_integer() != std::optional<std::int64_t>(static_cast<std::int64_t>(t.degrees[i])))
      v.first_column = false;

  v.row_orthogonality = true;
  for (std::size_t a = 0; a < t.size() && v.row_orthogonality; ++a)
    for (std::size_t b = a; b < t.size(); ++b)
      if (weighted_row_product(t, a, b).to_integer() != std::optional<std::int64_t>(a == b ? n : 0)) {
        v.row_orthogonality = false;
        break;
      }

  v.column_orthogonality = true;
  for (std::size_t k = 0; k < classes.size() && v.column_orthogonality; ++k)
    for (std::size_t l = k; l < classes.size(); ++l) {
      auto expected = k == l ? n / static_cast<std::int64_t>(classes[k].size()) : 0;
      if (column_product(t, k, l).to_integer() != std::optional<std::int64_t>(expected)) {
        v.column_orthogonality = false;
        break;
      }
    }

  auto linear = static_cast<std::uint64_t>(std::count(t.degrees.begin(), t.degrees.end(), 1));
  v.linear_count = linear == derived_subgroup(g).index();

  v.kernels_normal = t.kernels.size() == t.size() &&
                     std::all_of(t.kernels.begin(), t.kernels.end(), [](const Subgroup& k) { return is_normal(k); });
  return v;
}

/// For each class of `sub` (a group on the same points as `parent` whose
/// elements all lie in it), the class of `parent` containing it.
inline std::vector<std::size_t> class_fusion(const Group& sub, const Group& parent) {
  std::vector<std::size_t> fusion;
  for (const auto& c : sub.classes()) {
    auto idx = parent.index_of(sub.element(c.representative));
    if (!idx) throw PreconditionError("subgroup element missing from the parent group");
    fusion.push_back(parent.class_of(*idx));
  }
  return fusion;
}

/// <chi|_M, psi> for chi a row of the parent table and psi a row of the
/// table of M, given the class fusion of M into the parent.
inline std::int64_t restriction_multiplicity(const CharacterTable& parent, std::size_t chi,
                                             const CharacterTable& sub, std::size_t psi,
                                             const std::vector<std::size_t>& fusion) {
  const auto e = std::lcm(parent.conductor, sub.conductor);
  std::vector<std::int64_t> acc(e, 0);
  const auto& classes = sub.group->classes();
  for (std::size_t c = 0; c < classes.size(); ++c)
    accumulate_product(acc, parent.values[chi][fusion[c]].embed(e), sub.values[psi][c].conj().embed(e),
                       static_cast<std::int64_t>(classes[c].size()));
  auto total = CyclotomicInt::from_coefficients(std::move(acc)).to_integer();
  auto m = static_cast<std::int64_t>(sub.group->order());
  if (!total || *total % m != 0) throw NonIntegral("restriction inner product is not an integer");
  return *total / m;
}

/// Stabilizer of the character `row` of `n_table` (the table of N as a group)
/// under conjugation by the parent of N.
inline Subgroup inertia_group(const Subgroup& n, const CharacterTable& n_table, std::size_t row) {
  if (!is_normal(n)) throw NotNormal("inertia group requires a normal subgroup");
  const auto& g = n.parent();
  const auto& ng = *n_table.group;
  if (ng.order() != n.order()) throw PreconditionError("table does not belong to the given subgroup");
  std::vector<Elem> to_local(g->order(), 0);
  for (auto m : n.members()) {
    auto idx = ng.index_of(g->element(m));
    if (!idx) throw PreconditionError("table does not belong to the given subgroup");
    to_local[m] = *idx;
  }
  std::vector<std::vector<std::int64_t>> canon;
  for (const auto& v : n_table.values[row]) canon.push_back(v.canonical());

  std::vector<Elem> members;
  for (Elem x = 0; x < g->order(); ++x) {
    bool fixes = true;
    for (const auto& cls : ng.classes()) {
      auto rep_in_g = *g->index_of(ng.element(cls.representative));
      auto conj = to_local[g->conj(rep_in_g, x)];
      if (canon[ng.class_of(conj)] != canon[ng.class_of(cls.representative)]) {
        fixes = false;
        break;
      }
    }
    if (fixes) members.push_back(x);
  }
  return Subgroup(g, std::move(members));
}

} // namespace codeg
