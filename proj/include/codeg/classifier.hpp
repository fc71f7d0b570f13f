#pragma once

#include <optional>
#include <string>
#include <vector>

#include "codegree.hpp"
#include "structure.hpp"

namespace codeg {

/// Everything the classifier and the oracles derive from one group, computed once.
struct GroupAnalysis {
  GroupPtr group;
  CharacterTable table;
  std::vector<NormalSubgroup> normals;
  Subgroup derived;
  std::optional<FrobeniusWitness> frobenius;
  std::optional<TwoFrobeniusWitness> two_frobenius;
  bool nilpotent = false;

  explicit GroupAnalysis(GroupPtr g)
      : group(g),
        table(character_table(g)),
        normals(normal_subgroups(g)),
        derived(derived_subgroup(g)),
        frobenius(codeg::frobenius_kernel(g, normals)),
        two_frobenius(codeg::two_frobenius(g, normals)),
        nilpotent(is_nilpotent(g)) {}
};

/// |cod(G|G')| > 1 with pairwise coprime members. False for abelian groups.
inline bool is_star_group(const CharacterTable& t) {
  if (t.group->is_abelian()) return false;
  auto cod = cod_nonlinear(t);
  return cod.size() > 1 && pairwise_coprime(cod);
}

enum class Branch { FrobeniusCpkQ8, TwoFrobenius, NotStar };

inline std::string to_string(Branch b) {
  switch (b) {
  case Branch::FrobeniusCpkQ8: return "FROBENIUS_CPK_Q8";
  case Branch::TwoFrobenius: return "TWO_FROBENIUS";
  case Branch::NotStar: return "NOT_STAR";
  }
  return "?";
}

struct FrobeniusBranch {
  std::uint64_t p = 0;
  unsigned k = 0;
  std::uint64_t kernel_order = 0;
  std::uint64_t complement_order = 0;
};

struct TwoFrobeniusBranch {
  std::uint64_t K_order = 0;
  std::uint64_t H_order = 0;
  std::uint64_t R_order = 0;
  std::uint64_t R0_order = 0;
  std::uint64_t p = 0;
  IntSet cod_pair;  // {p, |K||R0|}
};

struct Certificate {
  std::string group_name;
  bool is_star = false;
  Branch branch = Branch::NotStar;
  IntSet cod_nonlinear;
  std::optional<FrobeniusBranch> frobenius;
  std::optional<TwoFrobeniusBranch> two_frobenius;
  /// Why the group is not a *-group: ABELIAN, SINGLE_CODEGREE or CODEGREES_NOT_COPRIME.
  std::string reason;
  /// Structural facts: NILPOTENT, FROBENIUS, FROBENIUS_MIXED_KERNEL, TWO_FROBENIUS.
  std::vector<std::string> notes;
  /// Failed branch conditions (R_NOT_CYCLIC, K_NOT_UNIQUE_MINIMAL, ...).
  std::vector<std::string> violations;
  /// THEOREM_A_VIOLATION or CONVERSE_VIOLATION; never set on a consistent run.
  std::optional<std::string> failure_reason;
};

/// Subgroup of order |G:N| meeting N trivially, built greedily from elements
/// whose order is coprime to |N|. Coprimality puts every such subgroup inside
/// some complement, so the scan always completes.
inline std::optional<Subgroup> find_complement(const Subgroup& n) {
  const auto& g = n.parent();
  const auto target = n.index();
  std::vector<Elem> gens;
  Subgroup current = trivial_subgroup(g);
  for (Elem x = 1; x < g->order() && current.order() < target; ++x) {
    if (current.contains(x) || !coprime(g->element_order(x), n.order())) continue;
    gens.push_back(x);
    auto candidate = generate(g, gens);
    if (target % candidate.order() == 0 && intersection(candidate, n).is_trivial()) {
      current = std::move(candidate);
    } else {
      gens.pop_back();
    }
  }
  if (current.order() != target) return std::nullopt;
  return current;
}

/// Smallest m > 0 with x^m in K.
inline std::uint64_t order_modulo(const Group& g, Elem x, const Subgroup& k) {
  std::uint64_t m = 1;
  for (Elem y = x; !k.contains(y); y = g.mul(y, x)) ++m;
  return m;
}

struct FrobeniusCheck {
  std::vector<std::string> violations;
  FrobeniusBranch witness;
};

inline FrobeniusCheck check_frobenius_branch(const GroupAnalysis& a) {
  FrobeniusCheck out;
  const auto& n = a.frobenius->kernel;
  out.witness.kernel_order = n.order();
  out.witness.complement_order = n.index();
  auto ea = is_elementary_abelian(n);
  if (!ea.holds) {
    out.violations.push_back("KERNEL_NOT_ELEMENTARY_ABELIAN");
  } else {
    out.witness.p = *ea.prime;
    out.witness.k = *ea.rank;
    if (*ea.rank < 2) out.violations.push_back("KERNEL_RANK_ONE");
  }
  auto complement = find_complement(n);
  if (!complement)
    out.violations.push_back("COMPLEMENT_MISSING");
  else if (!is_quaternion8(*complement))
    out.violations.push_back("COMPLEMENT_NOT_Q8");
  return out;
}

struct TwoFrobeniusCheck {
  std::vector<std::string> violations;
  TwoFrobeniusBranch witness;
};

/// The four structural conditions of a 2-Frobenius *-group plus the codegree formula.
inline TwoFrobeniusCheck check_two_frobenius_branch(const GroupAnalysis& a) {
  TwoFrobeniusCheck out;
  const auto& g = a.group;
  const auto& w = *a.two_frobenius;
  auto& wit = out.witness;
  wit.K_order = w.K.order();
  wit.H_order = w.H.order();
  wit.R_order = w.R_order;

  if (!is_cyclic(quotient_group(w.H).group)) out.violations.push_back("R_NOT_CYCLIC");

  if (!w.p) {
    out.violations.push_back("J_NOT_PRIME_ORDER");
  } else {
    wit.p = *w.p;
    bool has_j = std::any_of(w.H.members().begin(), w.H.members().end(), [&](Elem x) {
      return !w.K.contains(x) && g->element_order(x) == *w.p;
    });
    if (!has_j) out.violations.push_back("J_MISSING");
  }

  std::size_t minimal = 0;
  bool k_minimal = false;
  for (const auto& n : a.normals) {
    if (!n.minimal) continue;
    ++minimal;
    if (n.subgroup == w.K) k_minimal = true;
  }
  if (!(k_minimal && minimal == 1)) out.violations.push_back("K_NOT_UNIQUE_MINIMAL");

  std::optional<std::uint64_t> r0;
  bool constant = true;
  bool cyclic = true;
  bool centralized = true;
  std::vector<bool> seen(g->class_count(), false);
  for (auto x : w.K.members()) {
    if (x == 0 || seen[g->class_of(x)]) continue;
    seen[g->class_of(x)] = true;
    auto c = centralizer(g, x);
    if (!w.K.is_subset_of(c)) {
      centralized = false;
      continue;
    }
    auto order = c.order() / w.K.order();
    if (r0 && *r0 != order) constant = false;
    if (!r0) r0 = order;
    bool has_generator = std::any_of(c.members().begin(), c.members().end(),
                                     [&](Elem y) { return order_modulo(*g, y, w.K) == order; });
    if (!has_generator) cyclic = false;
  }
  if (!centralized) out.violations.push_back("K_NOT_CENTRALIZED");
  if (!constant) out.violations.push_back("R0_ORDER_NOT_CONSTANT");
  if (!cyclic) out.violations.push_back("R0_NOT_CYCLIC");
  if (r0) {
    wit.R0_order = *r0;
    if (w.R_order % *r0 != 0) out.violations.push_back("R0_NOT_IN_R");
    if (prime_set(*r0) != prime_set(w.R_order)) out.violations.push_back("R0_PRIMES_MISMATCH");
  }

  if (wit.p != 0 && wit.R0_order != 0) {
    std::set<std::uint64_t> pair{wit.p, wit.K_order * wit.R0_order};
    wit.cod_pair.assign(pair.begin(), pair.end());
    if (cod_nonlinear(a.table) != wit.cod_pair) out.violations.push_back("COD_SET_MISMATCH");
  }
  return out;
}

inline Certificate classify(const GroupAnalysis& a) {
  Certificate cert;
  cert.group_name = a.group->name();
  cert.cod_nonlinear = cod_nonlinear(a.table);
  cert.is_star = is_star_group(a.table);

  if (a.nilpotent) cert.notes.push_back("NILPOTENT");
  if (a.frobenius) {
    cert.notes.push_back("FROBENIUS");
    if (prime_set(a.frobenius->kernel.order()).size() > 1) cert.notes.push_back("FROBENIUS_MIXED_KERNEL");
  }
  if (a.two_frobenius) cert.notes.push_back("TWO_FROBENIUS");

  if (!cert.is_star) {
    cert.branch = Branch::NotStar;
    if (a.derived.is_trivial())
      cert.reason = "ABELIAN";
    else if (cert.cod_nonlinear.size() == 1)
      cert.reason = "SINGLE_CODEGREE";
    else
      cert.reason = "CODEGREES_NOT_COPRIME";
    // A 2-Frobenius group meeting all four conditions is always a *-group.
    if (a.two_frobenius) {
      auto check = check_two_frobenius_branch(a);
      if (check.violations.empty()) cert.failure_reason = "CONVERSE_VIOLATION";
    }
    return cert;
  }

  if (a.frobenius) {
    auto check = check_frobenius_branch(a);
    if (check.violations.empty()) {
      cert.branch = Branch::FrobeniusCpkQ8;
      cert.frobenius = check.witness;
      return cert;
    }
    cert.violations = check.violations;
  } else if (a.two_frobenius) {
    auto check = check_two_frobenius_branch(a);
    if (check.violations.empty()) {
      cert.branch = Branch::TwoFrobenius;
      cert.two_frobenius = check.witness;
      return cert;
    }
    cert.violations = check.violations;
  } else {
    cert.violations.push_back("NEITHER_FROBENIUS_NOR_TWO_FROBENIUS");
  }
  cert.branch = Branch::NotStar;
  cert.failure_reason = "THEOREM_A_VIOLATION";
  return cert;
}

inline Certificate classify(const GroupPtr& g) { return classify(GroupAnalysis(g)); }

// ---------------------------------------------------------------------------
// Oracles: executable forms of the lemmas the classification rests on.

/// For each prime p dividing |G| but no member of cod(G|G'): does a Sylow
/// p-subgroup act Frobeniusly on G', i.e. C_{G'}(y) = 1 for all 1 != y in P?
inline std::vector<std::pair<std::uint64_t, bool>> oracle_qian1(const CharacterTable& t) {
  const auto& g = t.group;
  if (g->is_abelian()) throw PreconditionError("Sylow action oracle needs a nonabelian group");
  auto cod = cod_nonlinear(t);
  auto derived = derived_subgroup(g);
  std::vector<std::pair<std::uint64_t, bool>> out;
  for (auto p : prime_set(g->order())) {
    if (std::any_of(cod.begin(), cod.end(), [&](auto c) { return c % p == 0; })) continue;
    auto sylow = sylow_subgroup(g, p);
    bool frobenius_action = true;
    for (auto y : sylow.members()) {
      if (y == 0) continue;
      if (centralizer_in(derived, y).order() != 1) {
        frobenius_action = false;
        break;
      }
    }
    out.emplace_back(p, frobenius_action);
  }
  return out;
}

enum class NqOutcome { Pass, Fail, NotApplicable, PreconditionRejected };

inline std::string to_string(NqOutcome o) {
  switch (o) {
  case NqOutcome::Pass: return "pass";
  case NqOutcome::Fail: return "fail";
  case NqOutcome::NotApplicable: return "not-applicable";
  case NqOutcome::PreconditionRejected: return "precondition-rejected";
  }
  return "?";
}

/// Checks the N_q condition for G acting on the elementary abelian normal
/// subgroup M by conjugation and, when it holds, the Sylow-count identity
/// (|M| - 1) = n_q(G) (|C_M(Q)| - 1).
inline NqOutcome oracle_nq_count(const GroupPtr& g, const Subgroup& m, std::uint64_t q) {
  require_prime(q);
  if (m.is_trivial() || !is_normal(m) || !is_elementary_abelian(m).holds) return NqOutcome::PreconditionRejected;
  auto m_gens = generating_set(m);
  Subgroup kernel = whole_group(g);
  for (auto v : m_gens) kernel = intersection(kernel, centralizer(g, v));
  if (kernel.index() % q != 0) return NqOutcome::PreconditionRejected;

  const auto q_part = p_part(g->order(), q);
  std::vector<bool> seen(g->class_count(), false);
  for (auto v : m.members()) {
    if (v == 0 || seen[g->class_of(v)]) continue;
    seen[g->class_of(v)] = true;
    auto c = centralizer(g, v);
    if (p_part(c.order(), q) != q_part) return NqOutcome::NotApplicable;
    if (count_sylow(as_group(c), q) != 1) return NqOutcome::NotApplicable;
  }

  auto sylow = sylow_subgroup(g, q);
  auto q_gens = generating_set(sylow);
  std::uint64_t fixed = 0;
  for (auto v : m.members())
    if (std::all_of(q_gens.begin(), q_gens.end(), [&](Elem y) { return g->commute(v, y); })) ++fixed;
  return (m.order() - 1) == count_sylow(g, q) * (fixed - 1) ? NqOutcome::Pass : NqOutcome::Fail;
}

/// |cod(G|G')| <= 2 forces solvability.
inline bool oracle_solvability(const CharacterTable& t) {
  if (cod_nonlinear(t).size() > 2) return true;
  return is_solvable(t.group);
}

struct DivisibilityViolation {
  std::string detail;
};

/// For each normal M, chi in Irr(G) and constituent psi of chi|_M:
/// cod(psi) divides cod(chi). Returns the number of pairs checked.
inline std::size_t oracle_subnormal_divisibility(const CharacterTable& t, const std::vector<NormalSubgroup>& normals,
                                                 std::vector<DivisibilityViolation>& violations) {
  std::size_t checked = 0;
  for (const auto& n : normals) {
    if (n.subgroup.is_trivial()) continue;
    auto sub = as_group(n.subgroup, t.group->name() + "_M" + std::to_string(n.subgroup.order()));
    auto sub_table = character_table(sub);
    auto fusion = class_fusion(*sub, *t.group);
    for (std::size_t chi = 0; chi < t.size(); ++chi) {
      auto cod_chi = codegree(t, chi);
      for (std::size_t psi = 0; psi < sub_table.size(); ++psi) {
        if (restriction_multiplicity(t, chi, sub_table, psi, fusion) == 0) continue;
        ++checked;
        auto cod_psi = codegree(sub_table, psi);
        if (cod_chi % cod_psi != 0)
          violations.push_back({"|M|=" + std::to_string(n.subgroup.order()) + " cod(psi)=" +
                                std::to_string(cod_psi) + " cod(chi)=" + std::to_string(cod_chi)});
      }
    }
  }
  return checked;
}

/// For abelian normal K and chi with ker chi meeting K trivially: |K| divides cod(chi).
inline std::size_t oracle_abelian_kernel(const CharacterTable& t, const std::vector<NormalSubgroup>& normals,
                                         std::vector<DivisibilityViolation>& violations) {
  std::size_t checked = 0;
  for (const auto& n : normals) {
    const auto& k = n.subgroup;
    if (k.is_trivial() || !is_abelian(k)) continue;
    for (std::size_t chi = 0; chi < t.size(); ++chi) {
      if (!intersection(k, t.kernels[chi]).is_trivial()) continue;
      ++checked;
      if (codegree(t, chi) % k.order() != 0)
        violations.push_back({"|K|=" + std::to_string(k.order()) + " cod(chi)=" + std::to_string(codegree(t, chi))});
    }
  }
  return checked;
}

/// For G = C_p x L with p not dividing |L|, every psi = lambda x chi with
/// lambda != 1 has cod(psi) = p cod(chi). Checks the resulting set identities
/// cod(G) = cod(L) u p cod(L) and cod(G|G') = cod(L|L') u p cod(L|L').
inline bool oracle_direct_product(const CharacterTable& product, const CharacterTable& factor, std::uint64_t p) {
  require_prime(p);
  if (product.group->order() != p * factor.group->order() || factor.group->order() % p == 0)
    throw PreconditionError("direct-product oracle needs |G| = p |L| with p coprime to |L|");
  auto expand = [p](const IntSet& s) {
    std::set<std::uint64_t> out(s.begin(), s.end());
    for (auto c : s) out.insert(p * c);
    return IntSet(out.begin(), out.end());
  };
  return cod_all(product) == expand(cod_all(factor)) && cod_nonlinear(product) == expand(cod_nonlinear(factor));
}

/// A singleton cod(G|G') comes from a p-group or from a Frobenius group whose
/// kernel G' is elementary abelian, with cyclic complement and cod = {|G'|}.
inline bool oracle_singleton_structure(const GroupAnalysis& a) {
  auto cod = cod_nonlinear(a.table);
  if (cod.size() != 1) return true;
  if (is_p_group(a.group)) return true;
  if (!a.frobenius || !(a.frobenius->kernel == a.derived)) return false;
  if (!is_elementary_abelian(a.derived).holds) return false;
  if (!is_cyclic(quotient_group(a.derived).group)) return false;
  return cod.front() == a.derived.order();
}

/// Pairwise coprime cod(G|G') with m > 1 members gives exactly m = 2 components.
inline bool oracle_component_count(const CharacterTable& t) {
  auto cod = cod_nonlinear(t);
  if (cod.size() <= 1 || !pairwise_coprime(cod)) return true;
  return prime_graph(cod).components.size() == cod.size() && cod.size() == 2;
}

} // namespace codeg
