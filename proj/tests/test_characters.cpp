#include <gtest/gtest.h>

#include <cmath>

#include "oracle/numeric_table.hpp"
#include "support.hpp"

using namespace codeg;
using testing_support::make;

namespace {

IntSet to_intset(const std::set<std::size_t>& s) { return {s.begin(), s.end()}; }

std::vector<std::uint64_t> sorted_degrees(const CharacterTable& t) {
  auto d = t.degrees;
  std::sort(d.begin(), d.end());
  return d;
}

/// Brute-force class index for each class of `g`.
std::vector<int> brute_class_map(const Group& g, const oracle::BruteGroup& brute) {
  std::vector<int> map;
  for (const auto& c : g.classes()) {
    const auto& img = g.element(c.representative).images();
    map.push_back(brute.class_of[brute.index(oracle::Perm(img.begin(), img.end()))]);
  }
  return map;
}

} // namespace

// ---------------------------------------------------------------------------
// cyclotomic integers

TEST(Cyclotomic, RootsOfUnitySumToZero) {
  for (std::uint64_t e : {1, 2, 3, 4, 6, 12, 15, 30}) {
    CyclotomicInt sum(e);
    for (std::uint64_t k = 0; k < e; ++k) sum += CyclotomicInt::root_power(e, static_cast<std::int64_t>(k));
    EXPECT_EQ(sum.to_integer(), std::optional<std::int64_t>(e == 1 ? 1 : 0)) << e;
  }
}

TEST(Cyclotomic, CanonicalEquality) {
  // 1 + z3 + z3^2 = 0 and -z3 - z3^2 = 1, seen inside conductor 12
  auto z = CyclotomicInt::root_power(12, 4);
  auto a = CyclotomicInt::integer(12, 0) - z - z * z;
  EXPECT_EQ(a, CyclotomicInt::integer(12, 1));
  EXPECT_EQ(a.to_integer(), std::optional<std::int64_t>(1));
  // i^2 = -1
  auto i = CyclotomicInt::root_power(4, 1);
  EXPECT_EQ(i * i, CyclotomicInt::integer(4, -1));
  EXPECT_FALSE(i.is_rational_integer());
  // mixed conductors compare over their lcm
  EXPECT_EQ(CyclotomicInt::root_power(3, 1), CyclotomicInt::root_power(6, 2));
  EXPECT_EQ(CyclotomicInt::root_power(5, 2).embed(15), CyclotomicInt::root_power(15, 6));
}

TEST(Cyclotomic, ConjugationAndGalois) {
  auto z = CyclotomicInt::root_power(7, 1);
  auto s = z + z.galois(2) + z.galois(4);  // Gaussian period (-1 + sqrt(-7)) / 2
  auto t = s.conj();
  EXPECT_EQ(s + t, CyclotomicInt::integer(7, -1));
  EXPECT_EQ(s * t, CyclotomicInt::integer(7, 2));
  EXPECT_NEAR(std::abs(s.evaluate() - std::complex<double>(-0.5, std::sqrt(7.0) / 2)), 0.0, 1e-12);
}

TEST(Cyclotomic, Formatting) {
  EXPECT_EQ(CyclotomicInt::integer(4, -3).to_string(), "-3");
  EXPECT_EQ(CyclotomicInt::root_power(4, 1).to_string(), "E(4)");
  EXPECT_EQ((2 * CyclotomicInt::root_power(5, 3)).to_string(), "2*E(5)^3");
}

// ---------------------------------------------------------------------------
// modular linear algebra

TEST(Modular, CharpolyAndRoots) {
  const std::uint64_t p = 13;
  modular::Matrix m(3, 3);
  // upper triangular with eigenvalues 2, 2, 5
  m(0, 0) = 2;
  m(0, 1) = 7;
  m(1, 1) = 2;
  m(1, 2) = 1;
  m(2, 2) = 5;
  auto poly = modular::charpoly(m, p);
  ASSERT_EQ(poly.size(), 4u);
  EXPECT_EQ(poly[3], 1u);
  auto r = modular::roots(poly, p);
  EXPECT_EQ(r, (std::vector<std::pair<std::uint64_t, std::size_t>>{{2, 2}, {5, 1}}));
}

TEST(Modular, Nullspace) {
  const std::uint64_t p = 7;
  modular::Matrix m(2, 3);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(0, 2) = 3;
  m(1, 0) = 2;
  m(1, 1) = 4;
  m(1, 2) = 6;
  auto basis = modular::nullspace(m, p);
  EXPECT_EQ(basis.size(), 2u);
  for (const auto& v : basis) EXPECT_EQ((v[0] + 2 * v[1] + 3 * v[2]) % p, 0u);
}

// ---------------------------------------------------------------------------
// character tables

TEST(CharacterTable, DegreeExamples) {
  EXPECT_EQ(sorted_degrees(character_table(make("symmetric 3"))), (std::vector<std::uint64_t>{1, 1, 2}));
  EXPECT_EQ(sorted_degrees(character_table(make("quaternion 8"))), (std::vector<std::uint64_t>{1, 1, 1, 1, 2}));
  auto c5 = character_table(make("cyclic 5"));
  EXPECT_EQ(c5.size(), 5u);
  for (const auto& row : c5.values)
    for (const auto& v : row) {
      EXPECT_EQ(v * v * v * v * v, CyclotomicInt::integer(5, 1));
    }
}

TEST(CharacterTable, RowLayout) {
  auto t = character_table(make("symmetric 4"));
  EXPECT_EQ(t.degrees, (std::vector<std::uint64_t>{1, 1, 2, 3, 3}));
  for (const auto& v : t.values[0]) EXPECT_EQ(v.to_integer(), std::optional<std::int64_t>(1));
  for (std::size_t i = 0; i < t.size(); ++i)
    EXPECT_EQ(t.values[i][0].to_integer(), std::optional<std::int64_t>(static_cast<std::int64_t>(t.degrees[i])));
}

TEST(CharacterTable, Kernels) {
  auto s4 = make("symmetric 4");
  auto t = character_table(s4);
  EXPECT_TRUE(t.kernels[0].is_whole());
  EXPECT_EQ(t.kernels[2].order(), 4u);  // degree-2 character
  auto q8 = make("quaternion 8");
  auto tq = character_table(q8);
  EXPECT_TRUE(tq.kernels.back().is_trivial());
  EXPECT_EQ(character_kernel(tq, 4), tq.kernels[4]);
}

TEST(CharacterTable, MatchesNumericOracle) {
  for (const auto& spec : testing_support::small_specs()) {
    SCOPED_TRACE(spec);
    auto g = make(spec);
    auto t = character_table(g);
    auto brute = testing_support::to_brute(*g);
    auto numeric = oracle::numeric_table(brute);
    auto cls = brute_class_map(*g, brute);

    ASSERT_EQ(t.size(), numeric.rows.size());
    std::vector<bool> used(numeric.rows.size(), false);
    for (std::size_t i = 0; i < t.size(); ++i) {
      bool matched = false;
      for (std::size_t r = 0; r < numeric.rows.size() && !matched; ++r) {
        if (used[r]) continue;
        double diff = 0;
        for (std::size_t k = 0; k < g->class_count(); ++k)
          diff = std::max(diff, std::abs(t.values[i][k].evaluate() - numeric.rows[r][cls[k]]));
        if (diff < 1e-6) {
          used[r] = matched = true;
          EXPECT_EQ(t.degrees[i], numeric.degrees[r]);
          EXPECT_EQ(t.kernels[i].order(), numeric.kernel_orders[r]);
          EXPECT_EQ(codegree(t, i), numeric.codegrees[r]);
        }
      }
      EXPECT_TRUE(matched) << "row " << i << " has no numeric counterpart";
    }
    EXPECT_EQ(cod_all(t), to_intset(oracle::numeric_cod_all(numeric)));
    EXPECT_EQ(cod_nonlinear(t), to_intset(oracle::numeric_cod_nonlinear(numeric)));
  }
}

TEST(CharacterTable, ValidityOverSmallGroups) {
  for (const auto& spec : testing_support::small_specs()) {
    SCOPED_TRACE(spec);
    auto t = character_table(make(spec));
    auto v = validate_table(t);
    EXPECT_TRUE(v.degree_sum);
    EXPECT_TRUE(v.principal_row);
    EXPECT_TRUE(v.first_column);
    EXPECT_TRUE(v.row_orthogonality);
    EXPECT_TRUE(v.column_orthogonality);
    EXPECT_TRUE(v.linear_count);
    EXPECT_TRUE(v.kernels_normal);
  }
}

TEST(CharacterTable, ValidatorDetectsCorruption) {
  auto t = character_table(make("symmetric 4"));
  auto bad = t;
  bad.values[3][1] = CyclotomicInt::integer(t.conductor, 1);
  EXPECT_FALSE(validate_table(bad).row_orthogonality);
  EXPECT_FALSE(validate_table(bad).column_orthogonality);
  bad = t;
  bad.degrees[4] = 2;
  EXPECT_FALSE(validate_table(bad).degree_sum);
}

TEST(CharacterTable, DeterministicAcrossRuns) {
  auto a = character_table(make("semilinear 2 3 7 3"));
  auto b = character_table(make("semilinear 2 3 7 3"));
  EXPECT_EQ(a.degrees, b.degrees);
  EXPECT_EQ(a.values, b.values);
}

TEST(CharacterTable, SplitPrimeChoice) {
  EXPECT_EQ(next_split_prime(12, 24), 13u);
  EXPECT_EQ(next_split_prime(2, 8), 7u);
  EXPECT_EQ(next_split_prime(12, 24, 13), 37u);
}

TEST(InertiaGroup, Examples) {
  auto a4 = make("alternating 4");
  auto v4 = normal_subgroups(a4)[1].subgroup;
  auto v4_group = as_group(v4);
  auto vt = character_table(v4_group);
  EXPECT_TRUE(inertia_group(v4, vt, 0).is_whole());
  for (std::size_t r = 1; r < vt.size(); ++r) EXPECT_EQ(inertia_group(v4, vt, r), v4);

  auto s4 = make("symmetric 4");
  auto k = normal_subgroups(s4)[1].subgroup;
  auto kt = character_table(as_group(k));
  for (std::size_t r = 1; r < kt.size(); ++r) EXPECT_EQ(inertia_group(k, kt, r).order(), 8u);

  auto not_normal = generate(s4, {testing_support::elem(s4, "(1,2)")});
  EXPECT_THROW(inertia_group(not_normal, character_table(as_group(not_normal)), 0), NotNormal);
}

TEST(InertiaGroup, OrbitEquivalenceOnElementaryAbelianNormals) {
  for (const auto& spec : {"symmetric 4", "cpk_q8 3 2 builtin", "semilinear 2 4 5 2", "semilinear 3 2 8 1"}) {
    SCOPED_TRACE(spec);
    auto g = make(spec);
    for (const auto& n : normal_subgroups(g)) {
      if (n.subgroup.is_trivial() || !is_elementary_abelian(n.subgroup).holds) continue;
      auto nt = character_table(as_group(n.subgroup));
      std::vector<std::uint64_t> stabilizers, centralizers;
      for (std::size_t r = 1; r < nt.size(); ++r) stabilizers.push_back(inertia_group(n.subgroup, nt, r).order());
      for (auto x : n.subgroup.members())
        if (x != 0) centralizers.push_back(centralizer(g, x).order());
      std::sort(stabilizers.begin(), stabilizers.end());
      std::sort(centralizers.begin(), centralizers.end());
      EXPECT_EQ(stabilizers, centralizers);
      if (auto f = frobenius_kernel(g); f && f->kernel == n.subgroup)
        for (std::size_t r = 1; r < nt.size(); ++r) EXPECT_EQ(inertia_group(n.subgroup, nt, r), n.subgroup);
    }
  }
}

TEST(Restriction, FrobeniusReciprocityCounts) {
  // restricting the degree-3 characters of S4 to A4 gives one irreducible each
  auto s4 = make("symmetric 4");
  auto t = character_table(s4);
  auto a4 = as_group(derived_subgroup(s4));
  auto at = character_table(a4);
  auto fusion = class_fusion(*a4, *s4);
  for (std::size_t chi = 0; chi < t.size(); ++chi) {
    std::int64_t norm = 0;
    for (std::size_t psi = 0; psi < at.size(); ++psi) {
      auto m = restriction_multiplicity(t, chi, at, psi, fusion);
      norm += m * m;
    }
    EXPECT_EQ(norm, t.degrees[chi] == 2 ? 2 : 1);
  }
}

// ---------------------------------------------------------------------------
// codegrees and prime graphs

TEST(Codegree, Examples) {
  auto t = character_table(make("symmetric 4"));
  EXPECT_EQ(codegree(t, 0), 1u);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.degrees[i] == 3) EXPECT_EQ(codegree(t, i), 8u);
    if (t.degrees[i] == 2) EXPECT_EQ(codegree(t, i), 3u);
  }
  for (unsigned k = 3; k <= 6; ++k) {
    auto q = character_table(make("quaternion " + std::to_string(1u << k)));
    bool found = false;
    for (std::size_t i = 0; i < q.size(); ++i)
      if (q.degrees[i] == 2 && q.kernels[i].is_trivial()) {
        EXPECT_EQ(codegree(q, i), 1u << (k - 1));
        found = true;
      }
    EXPECT_TRUE(found);
  }
}

TEST(Codegree, RelativeSets) {
  auto s4 = make("symmetric 4");
  auto t = character_table(s4);
  EXPECT_EQ(cod_relative(t, derived_subgroup(s4)), (IntSet{3, 8}));
  EXPECT_EQ(cod_relative(t, whole_group(s4)), (IntSet{2, 3, 8}));
  EXPECT_EQ(cod_all(t), (IntSet{1, 2, 3, 8}));
  EXPECT_THROW(cod_relative(t, trivial_subgroup(s4)), PreconditionError);
  EXPECT_THROW(cod_relative(t, generate(s4, {testing_support::elem(s4, "(1,2)")})), NotNormal);
  EXPECT_THROW(cod_relative(t, derived_subgroup(make("symmetric 4"))), PreconditionError);
}

TEST(Codegree, SetInvariants) {
  for (const auto& spec : testing_support::small_specs()) {
    SCOPED_TRACE(spec);
    auto g = make(spec);
    auto t = character_table(g);
    auto all = cod_all(t);
    EXPECT_TRUE(std::binary_search(all.begin(), all.end(), 1u));
    for (const auto& n : normal_subgroups(g)) {
      if (n.subgroup.is_trivial()) continue;
      auto rel = cod_relative(t, n.subgroup);
      EXPECT_TRUE(std::includes(all.begin(), all.end(), rel.begin(), rel.end()));
      EXPECT_FALSE(std::binary_search(rel.begin(), rel.end(), 1u));
    }
    for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ((g->order() / t.kernels[i].order()) % codegree(t, i), 0u);
    auto report = codegree_report(t);
    EXPECT_EQ(report.per_character.size(), t.size());
    EXPECT_EQ(report.cod_all, all);
    if (!g->is_abelian()) EXPECT_EQ(report.cod_rel.at("GPRIME"), cod_nonlinear(t));
  }
}

TEST(PrimeGraph, Examples) {
  auto g = prime_graph({5, 15, 32});
  EXPECT_EQ(g.vertices, (std::vector<std::uint64_t>{2, 3, 5}));
  EXPECT_EQ(g.edges, (std::vector<std::pair<std::uint64_t, std::uint64_t>>{{3, 5}}));
  EXPECT_EQ(g.components, (std::vector<std::vector<std::uint64_t>>{{2}, {3, 5}}));
  EXPECT_EQ(prime_graph({1, 2, 3, 5, 6, 15, 32}).components.size(), 1u);
  auto single = prime_graph({4});
  EXPECT_EQ(single.vertices, (std::vector<std::uint64_t>{2}));
  EXPECT_TRUE(single.edges.empty());
  EXPECT_EQ(single.components.size(), 1u);
  EXPECT_EQ(prime_graph({3, 8}).components.size(), 2u);
  EXPECT_THROW(prime_graph({}), PreconditionError);
}

TEST(PrimeGraph, ComponentsAreConsistentWithEdges) {
  for (const IntSet& s : {IntSet{6, 35, 11}, IntSet{30, 7, 77}, IntSet{2, 3, 5}, IntSet{210}}) {
    auto g = prime_graph(s);
    std::map<std::uint64_t, std::size_t> comp;
    for (std::size_t c = 0; c < g.components.size(); ++c)
      for (auto p : g.components[c]) comp[p] = c;
    EXPECT_EQ(comp.size(), g.vertices.size());
    for (auto [p, q] : g.edges) {
      EXPECT_LT(p, q);
      EXPECT_EQ(comp[p], comp[q]);
    }
    // every edge comes from a member divisible by pq
    for (auto [p, q] : g.edges)
      EXPECT_TRUE(std::any_of(s.begin(), s.end(), [&](auto n) { return n % (p * q) == 0; }));
  }
}
