#pragma once

#include <optional>

#include "group.hpp"

namespace codeg {

inline bool is_abelian(const Subgroup& s) {
  const auto& g = s.parent();
  auto gens = generating_set(s);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!g->commute(gens[i], gens[j])) return false;
  return true;
}

inline bool is_cyclic(const Subgroup& s) {
  const auto& g = s.parent();
  return std::any_of(s.members().begin(), s.members().end(),
                     [&](Elem e) { return g->element_order(e) == s.order(); });
}

inline bool is_cyclic(const GroupPtr& g) { return is_cyclic(whole_group(g)); }

struct ElementaryAbelian {
  bool holds = false;
  std::optional<std::uint64_t> prime;
  std::optional<unsigned> rank;
};

/// The trivial group counts as elementary abelian of rank 0 with no prime.
inline ElementaryAbelian is_elementary_abelian(const Subgroup& s) {
  if (s.is_trivial()) return {true, std::nullopt, 0u};
  const auto& g = s.parent();
  auto p = g->element_order(s.members()[1]);
  if (!is_prime(p)) return {};
  for (auto e : s.members())
    if (e != 0 && g->element_order(e) != p) return {};
  if (!is_abelian(s)) return {};
  unsigned rank = 0;
  for (auto n = s.order(); n > 1; n /= p) ++rank;
  return {true, p, rank};
}

inline ElementaryAbelian is_elementary_abelian(const GroupPtr& g) { return is_elementary_abelian(whole_group(g)); }

inline std::size_t count_involutions(const Subgroup& s) {
  const auto& g = s.parent();
  return std::count_if(s.members().begin(), s.members().end(), [&](Elem e) { return g->element_order(e) == 2; });
}

/// Nonabelian 2-group with a unique involution (Q_8, Q_16, ...).
inline bool is_generalized_quaternion(const Subgroup& s) {
  return s.order() >= 8 && is_p_power(s.order(), 2) && count_involutions(s) == 1 && !is_abelian(s);
}

inline bool is_quaternion8(const Subgroup& s) { return s.order() == 8 && is_generalized_quaternion(s); }
inline bool is_quaternion8(const GroupPtr& g) { return is_quaternion8(whole_group(g)); }
inline bool is_generalized_quaternion(const GroupPtr& g) { return is_generalized_quaternion(whole_group(g)); }

inline bool is_p_group(const GroupPtr& g) { return g->order() > 1 && is_prime_power(g->order()); }

/// Every Sylow subgroup is normal.
inline bool is_nilpotent(const GroupPtr& g) {
  for (auto p : prime_set(g->order()))
    if (!is_normal(sylow_subgroup(g, p))) return false;
  return true;
}

/// The derived series reaches the trivial group.
inline bool is_solvable(const GroupPtr& g) {
  GroupPtr current = g;
  while (current->order() > 1) {
    auto d = derived_subgroup(current);
    if (d.order() == current->order()) return false;
    current = as_group(d);
  }
  return true;
}

struct FrobeniusWitness {
  Subgroup kernel;
  std::uint64_t complement_order = 0;
};

struct TwoFrobeniusWitness {
  Subgroup K;
  Subgroup H;
  std::uint64_t quotient_order = 0;  // |H/K|
  std::optional<std::uint64_t> p;    // |H/K| when it is prime
  std::uint64_t R_order = 0;         // |G:H|
};

/// C_H(x) <= K for every x in K \ {1}, with H and K normal in the parent group.
/// G-conjugation permutes both sets, so one representative per class suffices.
inline bool centralizers_inside(const Subgroup& h, const Subgroup& k) {
  const auto& g = k.parent();
  std::vector<bool> checked(g->class_count(), false);
  for (auto x : k.members()) {
    if (x == 0) continue;
    auto c = g->class_of(x);
    if (checked[c]) continue;
    checked[c] = true;
    for (auto y : h.members())
      if (!k.contains(y) && g->commute(x, y)) return false;
  }
  return true;
}

/// Centralizer test for N being the Frobenius kernel of its parent group.
inline bool is_frobenius_kernel(const Subgroup& n) {
  if (n.is_trivial() || n.is_whole() || !is_normal(n)) return false;
  return centralizers_inside(whole_group(n.parent()), n);
}

inline std::optional<FrobeniusWitness> frobenius_kernel(const GroupPtr& g,
                                                        const std::vector<NormalSubgroup>& normals) {
  std::optional<FrobeniusWitness> found;
  for (const auto& n : normals) {
    const auto& s = n.subgroup;
    if (s.is_trivial() || s.is_whole()) continue;
    if (!centralizers_inside(whole_group(g), s)) continue;
    if (found) throw Error("two distinct Frobenius kernels found in " + g->name());
    if (!coprime(s.order(), s.index())) throw Error("Frobenius kernel order not coprime to its index");
    found = FrobeniusWitness{s, s.index()};
  }
  return found;
}

inline std::optional<FrobeniusWitness> frobenius_kernel(const GroupPtr& g) {
  return frobenius_kernel(g, normal_subgroups(g));
}

/// First 1 < K < H < G with H Frobenius with kernel K and G/K Frobenius with
/// kernel H/K, scanning normal subgroups by ascending order.
inline std::optional<TwoFrobeniusWitness> two_frobenius(const GroupPtr& g,
                                                        const std::vector<NormalSubgroup>& normals) {
  for (const auto& kn : normals) {
    const auto& k = kn.subgroup;
    if (k.is_trivial() || k.is_whole()) continue;
    std::optional<Quotient> q;
    for (const auto& hn : normals) {
      const auto& h = hn.subgroup;
      if (h.is_whole() || h.order() <= k.order() || !k.is_subset_of(h)) continue;
      if (!centralizers_inside(h, k)) continue;
      if (!q) q = quotient_group(k);
      if (!is_frobenius_kernel(q->map(h))) continue;
      TwoFrobeniusWitness w{k, h, h.order() / k.order(), std::nullopt, h.index()};
      if (is_prime(w.quotient_order)) w.p = w.quotient_order;
      return w;
    }
  }
  return std::nullopt;
}

inline std::optional<TwoFrobeniusWitness> two_frobenius(const GroupPtr& g) {
  return two_frobenius(g, normal_subgroups(g));
}

} // namespace codeg
