#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "character_table.hpp"

namespace codeg {

using IntSet = std::vector<std::uint64_t>;  // sorted, no duplicates

/// cod(chi_i) = |G : ker chi_i| / chi_i(1).
inline std::uint64_t codegree(const CharacterTable& t, std::size_t row) {
  auto index = t.group->order() / t.kernels[row].order();
  auto degree = t.degrees[row];
  if (index % degree != 0)
    throw NonIntegral("codegree of row " + std::to_string(row) + " is not an integer");
  return index / degree;
}

/// cod(G): codegrees of all irreducible characters.
inline IntSet cod_all(const CharacterTable& t) {
  std::set<std::uint64_t> out;
  for (std::size_t i = 0; i < t.size(); ++i) out.insert(codegree(t, i));
  return {out.begin(), out.end()};
}

/// Rows whose kernel does not contain N.
inline std::vector<std::size_t> rows_over(const CharacterTable& t, const Subgroup& n) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!n.is_subset_of(t.kernels[i])) rows.push_back(i);
  return rows;
}

/// cod(G|N). N must be a nontrivial normal subgroup.
inline IntSet cod_relative(const CharacterTable& t, const Subgroup& n) {
  if (n.parent() != t.group) throw PreconditionError("subgroup does not belong to the table's group");
  if (n.is_trivial()) throw PreconditionError("cod(G|N) needs a nontrivial N");
  if (!is_normal(n)) throw NotNormal("cod(G|N) needs a normal subgroup");
  std::set<std::uint64_t> out;
  for (auto i : rows_over(t, n)) out.insert(codegree(t, i));
  return {out.begin(), out.end()};
}

/// cod(G|G'): codegrees of the non-linear characters. Empty for abelian groups.
inline IntSet cod_nonlinear(const CharacterTable& t) {
  std::set<std::uint64_t> out;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t.degrees[i] > 1) out.insert(codegree(t, i));
  return {out.begin(), out.end()};
}

inline bool pairwise_coprime(const IntSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!coprime(s[i], s[j])) return false;
  return true;
}

struct CharacterCodegree {
  std::uint64_t degree = 0;
  std::uint64_t kernel_order = 0;
  std::uint64_t codegree = 0;
};

struct CodegreeReport {
  std::vector<CharacterCodegree> per_character;
  IntSet cod_all;
  std::map<std::string, IntSet> cod_rel;
};

inline CodegreeReport codegree_report(const CharacterTable& t) {
  CodegreeReport report;
  for (std::size_t i = 0; i < t.size(); ++i)
    report.per_character.push_back({t.degrees[i], t.kernels[i].order(), codegree(t, i)});
  report.cod_all = cod_all(t);
  auto derived = derived_subgroup(t.group);
  if (!derived.is_trivial()) report.cod_rel.emplace("GPRIME", cod_relative(t, derived));
  return report;
}

struct PrimeGraph {
  std::vector<std::uint64_t> vertices;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;  // p < q, sorted
  std::vector<std::vector<std::uint64_t>> components;         // sorted by smallest prime
};

/// Primes dividing some member of `s`; p ~ q when pq divides a member.
inline PrimeGraph prime_graph(const IntSet& s) {
  if (s.empty()) throw PreconditionError("prime graph of an empty set");
  std::set<std::uint64_t> vertices;
  std::set<std::pair<std::uint64_t, std::uint64_t>> edges;
  for (auto n : s) {
    if (n == 0) throw PreconditionError("prime graph entries must be positive");
    auto primes = prime_set(n);
    vertices.insert(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size(); ++i)
      for (std::size_t j = i + 1; j < primes.size(); ++j) edges.emplace(primes[i], primes[j]);
  }
  PrimeGraph graph;
  graph.vertices.assign(vertices.begin(), vertices.end());
  graph.edges.assign(edges.begin(), edges.end());

  // union-find over vertex positions
  std::vector<std::size_t> parent(graph.vertices.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto pos = [&](std::uint64_t p) {
    return static_cast<std::size_t>(std::lower_bound(graph.vertices.begin(), graph.vertices.end(), p) -
                                    graph.vertices.begin());
  };
  for (auto [p, q] : graph.edges) {
    auto a = find(pos(p));
    auto b = find(pos(q));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::size_t, std::vector<std::uint64_t>> groups;
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) groups[find(i)].push_back(graph.vertices[i]);
  for (auto& [root, members] : groups) graph.components.push_back(std::move(members));
  return graph;
}

} // namespace codeg
