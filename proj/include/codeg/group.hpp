#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "numtheory.hpp"
#include "permutation.hpp"

namespace codeg {

/// Index of an element inside its group's canonical element list.
using Elem = std::uint32_t;

inline constexpr std::size_t kDefaultOrderBound = 20000;

/// Groups up to this order keep a full multiplication table.
inline constexpr std::size_t kTableOrderLimit = 2048;

struct ConjClass {
  Elem representative = 0;
  std::vector<Elem> members;  // sorted
  std::uint64_t rep_order = 1;

  std::size_t size() const { return members.size(); }
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

/// A finite permutation group with every element enumerated.
///
/// Elements are stored in lexicographic order of their image arrays, so the
/// identity always has index 0. Instances are immutable once built and are
/// shared through GroupPtr.
class Group {
public:
  static GroupPtr build(std::vector<Permutation> generators, std::string name = {},
                        std::size_t bound = kDefaultOrderBound) {
    if (generators.empty()) throw PreconditionError("a group needs at least one generator");
    const auto degree = generators.front().degree();
    for (const auto& g : generators)
      if (g.degree() != degree) throw DegreeMismatch("generators have different degrees");

    std::unordered_map<Permutation, Elem, PermutationHash> seen;
    std::vector<Permutation> found{Permutation::identity(degree)};
    seen.emplace(found.front(), 0);
    for (std::size_t head = 0; head < found.size(); ++head) {
      for (const auto& s : generators) {
        auto next = found[head] * s;
        if (seen.contains(next)) continue;
        if (found.size() >= bound)
          throw OrderBoundExceeded("group order exceeds the enumeration bound " + std::to_string(bound));
        seen.emplace(next, static_cast<Elem>(found.size()));
        found.push_back(std::move(next));
      }
    }
    return from_elements(std::move(found), std::move(generators), std::move(name));
  }

  /// Wraps an already closed element set. `generators` must generate it.
  static GroupPtr from_elements(std::vector<Permutation> elements, std::vector<Permutation> generators,
                                std::string name) {
    auto g = std::shared_ptr<Group>(new Group());
    g->init(std::move(elements), std::move(generators), std::move(name));
    return g;
  }

  const std::string& name() const { return name_; }
  std::uint64_t order() const { return elements_.size(); }
  std::size_t degree() const { return degree_; }
  std::uint64_t exponent() const { return exponent_; }

  const std::vector<Permutation>& generator_perms() const { return generator_perms_; }
  const std::vector<Elem>& generators() const { return generators_; }

  const Permutation& element(Elem e) const { return elements_[e]; }
  const std::vector<Permutation>& elements() const { return elements_; }

  std::optional<Elem> index_of(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Elem mul(Elem a, Elem b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * elements_.size() + b];
    return index_.at(elements_[a] * elements_[b]);
  }

  Elem inv(Elem a) const { return inverse_[a]; }

  /// x^g = g^-1 x g.
  Elem conj(Elem x, Elem g) const { return mul(mul(inverse_[g], x), g); }

  /// [a, b] = a^-1 b^-1 a b.
  Elem commutator(Elem a, Elem b) const { return mul(mul(inverse_[a], inverse_[b]), mul(a, b)); }

  Elem power(Elem a, std::uint64_t k) const {
    Elem result = 0;
    Elem base = a;
    while (k) {
      if (k & 1) result = mul(result, base);
      base = mul(base, base);
      k >>= 1;
    }
    return result;
  }

  std::uint64_t element_order(Elem a) const { return orders_[a]; }
  bool commute(Elem a, Elem b) const { return mul(a, b) == mul(b, a); }

  const std::vector<ConjClass>& classes() const { return classes_; }
  std::size_t class_count() const { return classes_.size(); }
  std::size_t class_of(Elem e) const { return class_of_[e]; }
  std::size_t inverse_class(std::size_t k) const { return inverse_class_[k]; }

  bool is_abelian() const { return classes_.size() == elements_.size(); }

private:
  Group() = default;

  void init(std::vector<Permutation> elements, std::vector<Permutation> generators, std::string name) {
    name_ = std::move(name);
    std::sort(elements.begin(), elements.end());
    elements_ = std::move(elements);
    degree_ = elements_.front().degree();
    index_.reserve(elements_.size());
    for (Elem i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);

    generator_perms_ = std::move(generators);
    for (const auto& g : generator_perms_) generators_.push_back(index_.at(g));

    const auto n = elements_.size();
    inverse_.resize(n);
    orders_.resize(n);
    exponent_ = 1;
    for (Elem i = 0; i < n; ++i) {
      inverse_[i] = index_.at(elements_[i].inverse());
      orders_[i] = elements_[i].order();
      exponent_ = std::lcm(exponent_, orders_[i]);
    }
    if (n <= kTableOrderLimit) build_table();
    build_classes();
  }

  // Fills the table along a BFS spanning tree: a*b = (a*parent(b)) * s.
  void build_table() {
    const auto n = elements_.size();
    const auto k = generators_.size();
    std::vector<Elem> right(n * k);
    for (Elem x = 0; x < n; ++x)
      for (std::size_t s = 0; s < k; ++s) right[x * k + s] = index_.at(elements_[x] * generator_perms_[s]);

    std::vector<Elem> bfs{0};
    std::vector<std::pair<Elem, std::size_t>> parent(n, {0, 0});
    std::vector<bool> reached(n, false);
    reached[0] = true;
    for (std::size_t head = 0; head < bfs.size(); ++head) {
      for (std::size_t s = 0; s < k; ++s) {
        auto next = right[bfs[head] * k + s];
        if (reached[next]) continue;
        reached[next] = true;
        parent[next] = {bfs[head], s};
        bfs.push_back(next);
      }
    }
    if (bfs.size() != n) throw Error("generators do not generate the supplied element set");

    table_.assign(n * n, 0);
    for (Elem a = 0; a < n; ++a) {
      auto* row = &table_[static_cast<std::size_t>(a) * n];
      row[0] = a;
      for (std::size_t pos = 1; pos < n; ++pos) {
        auto b = bfs[pos];
        auto [pb, s] = parent[b];
        row[b] = right[row[pb] * k + s];
      }
    }
  }

  void build_classes() {
    const auto n = elements_.size();
    constexpr auto unset = static_cast<std::size_t>(-1);
    class_of_.assign(n, unset);
    for (Elem start = 0; start < n; ++start) {
      if (class_of_[start] != unset) continue;
      const auto id = classes_.size();
      ConjClass cls;
      cls.representative = start;
      cls.rep_order = orders_[start];
      cls.members.push_back(start);
      class_of_[start] = id;
      for (std::size_t head = 0; head < cls.members.size(); ++head) {
        for (auto s : generators_) {
          auto y = conj(cls.members[head], s);
          if (class_of_[y] != unset) continue;
          class_of_[y] = id;
          cls.members.push_back(y);
        }
      }
      std::sort(cls.members.begin(), cls.members.end());
      classes_.push_back(std::move(cls));
    }
    inverse_class_.resize(classes_.size());
    for (std::size_t k = 0; k < classes_.size(); ++k)
      inverse_class_[k] = class_of_[inverse_[classes_[k].representative]];
  }

  std::string name_;
  std::size_t degree_ = 0;
  std::uint64_t exponent_ = 1;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, Elem, PermutationHash> index_;
  std::vector<Permutation> generator_perms_;
  std::vector<Elem> generators_;
  std::vector<Elem> inverse_;
  std::vector<std::uint64_t> orders_;
  std::vector<Elem> table_;
  std::vector<ConjClass> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<std::size_t> inverse_class_;
};

inline GroupPtr build_group(std::vector<Permutation> generators, std::string name = {},
                            std::size_t bound = kDefaultOrderBound) {
  return Group::build(std::move(generators), std::move(name), bound);
}

/// A subgroup of a parent group, stored as a sorted list of element indices.
class Subgroup {
public:
  Subgroup(GroupPtr parent, std::vector<Elem> members) : parent_(std::move(parent)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    mask_.assign(parent_->order(), false);
    for (auto m : members_) mask_[m] = true;
  }

  const GroupPtr& parent() const { return parent_; }
  std::uint64_t order() const { return members_.size(); }
  const std::vector<Elem>& members() const { return members_; }
  bool contains(Elem e) const { return mask_[e]; }
  bool is_trivial() const { return members_.size() == 1; }
  bool is_whole() const { return members_.size() == parent_->order(); }
  std::uint64_t index() const { return parent_->order() / order(); }

  bool is_subset_of(const Subgroup& other) const {
    return std::all_of(members_.begin(), members_.end(), [&](Elem e) { return other.contains(e); });
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.members_ == b.members_;
  }

private:
  GroupPtr parent_;
  std::vector<Elem> members_;
  std::vector<bool> mask_;
};

inline Subgroup whole_group(const GroupPtr& g) {
  std::vector<Elem> all(g->order());
  std::iota(all.begin(), all.end(), Elem{0});
  return Subgroup(g, std::move(all));
}

inline Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup(g, {0}); }

/// Subgroup generated by the given elements.
inline Subgroup generate(const GroupPtr& g, std::span<const Elem> gens) {
  std::vector<Elem> members{0};
  std::vector<bool> in(g->order(), false);
  in[0] = true;
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (auto s : gens) {
      auto next = g->mul(members[head], s);
      if (in[next]) continue;
      in[next] = true;
      members.push_back(next);
    }
  }
  return Subgroup(g, std::move(members));
}

inline Subgroup generate(const GroupPtr& g, std::initializer_list<Elem> gens) {
  return generate(g, std::span<const Elem>(gens.begin(), gens.size()));
}

/// Greedy generating set: scans members in order and keeps those not yet generated.
inline std::vector<Elem> generating_set(const Subgroup& s) {
  const auto& g = s.parent();
  std::vector<Elem> gens;
  std::vector<bool> in(g->order(), false);
  std::vector<Elem> current{0};
  in[0] = true;
  for (auto candidate : s.members()) {
    if (in[candidate]) continue;
    gens.push_back(candidate);
    // Extend the closure incrementally: every old element times the new generator,
    // then close under all generators.
    std::vector<Elem> frontier;
    for (auto m : current) {
      auto next = g->mul(m, candidate);
      if (!in[next]) {
        in[next] = true;
        frontier.push_back(next);
      }
    }
    current.insert(current.end(), frontier.begin(), frontier.end());
    for (std::size_t head = 0; head < current.size(); ++head) {
      for (auto gen : gens) {
        auto next = g->mul(current[head], gen);
        if (!in[next]) {
          in[next] = true;
          current.push_back(next);
        }
      }
    }
  }
  return gens;
}

inline Subgroup centralizer(const GroupPtr& g, Elem x) {
  if (x >= g->order()) throw PreconditionError("element index out of range");
  std::vector<Elem> members;
  for (Elem y = 0; y < g->order(); ++y)
    if (g->commute(x, y)) members.push_back(y);
  return Subgroup(g, std::move(members));
}

/// C_S(x) for a subgroup S.
inline Subgroup centralizer_in(const Subgroup& s, Elem x) {
  const auto& g = s.parent();
  std::vector<Elem> members;
  for (auto y : s.members())
    if (g->commute(x, y)) members.push_back(y);
  return Subgroup(g, std::move(members));
}

inline Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> members;
  for (auto e : a.members())
    if (b.contains(e)) members.push_back(e);
  return Subgroup(a.parent(), std::move(members));
}

inline bool normalizes(const Subgroup& s, std::span<const Elem> subgroup_gens, Elem x) {
  const auto& g = s.parent();
  return std::all_of(subgroup_gens.begin(), subgroup_gens.end(),
                     [&](Elem h) { return s.contains(g->conj(h, x)); });
}

inline bool is_normal(const Subgroup& s) {
  auto gens = generating_set(s);
  const auto& g = s.parent();
  return std::all_of(g->generators().begin(), g->generators().end(),
                     [&](Elem x) { return normalizes(s, gens, x); });
}

inline Subgroup normalizer(const Subgroup& s) {
  auto gens = generating_set(s);
  const auto& g = s.parent();
  std::vector<Elem> members;
  for (Elem x = 0; x < g->order(); ++x)
    if (normalizes(s, gens, x)) members.push_back(x);
  return Subgroup(g, std::move(members));
}

/// Closes sets of conjugacy classes under multiplication. Since products of
/// normal sets are normal, the closure of a class union is a normal subgroup.
class ClassClosure {
public:
  explicit ClassClosure(GroupPtr g) : g_(std::move(g)) {}

  /// Classes meeting the product C_a C_b.
  const std::vector<std::size_t>& product_support(std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    auto key = static_cast<std::uint64_t>(a) * g_->class_count() + b;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<bool> hit(g_->class_count(), false);
    std::vector<std::size_t> support;
    auto rep = g_->classes()[a].representative;
    for (auto y : g_->classes()[b].members) {
      auto k = g_->class_of(g_->mul(rep, y));
      if (!hit[k]) {
        hit[k] = true;
        support.push_back(k);
      }
    }
    return memo_.emplace(key, std::move(support)).first->second;
  }

  /// Returns the class mask of the normal subgroup generated by `mask`.
  std::vector<bool> close(std::vector<bool> mask) {
    mask[0] = true;
    std::vector<std::size_t> list;
    for (std::size_t k = 0; k < mask.size(); ++k)
      if (mask[k]) list.push_back(k);
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        for (auto k : product_support(list[i], list[j])) {
          if (!mask[k]) {
            mask[k] = true;
            list.push_back(k);
          }
        }
      }
    }
    return mask;
  }

  Subgroup to_subgroup(const std::vector<bool>& mask) const {
    std::vector<Elem> members;
    for (std::size_t k = 0; k < mask.size(); ++k)
      if (mask[k])
        members.insert(members.end(), g_->classes()[k].members.begin(), g_->classes()[k].members.end());
    return Subgroup(g_, std::move(members));
  }

private:
  GroupPtr g_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> memo_;
};

/// Classes covered by a conjugation-closed subgroup.
inline std::vector<bool> class_mask(const Subgroup& n) {
  const auto& g = n.parent();
  std::vector<bool> mask(g->class_count(), false);
  for (auto e : n.members()) mask[g->class_of(e)] = true;
  return mask;
}

inline Subgroup normal_closure(const GroupPtr& g, std::span<const Elem> elements) {
  ClassClosure closure(g);
  std::vector<bool> mask(g->class_count(), false);
  for (auto e : elements) mask[g->class_of(e)] = true;
  return closure.to_subgroup(closure.close(std::move(mask)));
}

/// G' as the normal closure of the commutators of generator pairs.
inline Subgroup derived_subgroup(const GroupPtr& g) {
  std::vector<Elem> commutators;
  const auto& gens = g->generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) commutators.push_back(g->commutator(gens[i], gens[j]));
  return normal_closure(g, commutators);
}

struct NormalSubgroup {
  Subgroup subgroup;
  bool minimal = false;
};

/// Every normal subgroup, sorted by order and then by member list.
///
/// Each normal subgroup is the join of the normal closures of the classes it
/// contains, so closing the single-class closures under pairwise joins
/// reaches all of them.
inline std::vector<NormalSubgroup> normal_subgroups(const GroupPtr& g) {
  ClassClosure closure(g);
  const auto r = g->class_count();
  std::map<std::vector<bool>, std::size_t> seen;
  std::vector<std::vector<bool>> masks;
  auto add = [&](std::vector<bool> mask) {
    if (seen.contains(mask)) return;
    seen.emplace(mask, masks.size());
    masks.push_back(std::move(mask));
  };
  std::vector<bool> trivial(r, false);
  trivial[0] = true;
  add(trivial);
  for (std::size_t k = 1; k < r; ++k) {
    auto mask = trivial;
    mask[k] = true;
    add(closure.close(std::move(mask)));
  }
  for (std::size_t i = 1; i < masks.size(); ++i) {
    for (std::size_t j = 1; j < i; ++j) {
      auto joined = masks[i];
      bool grows = false;
      for (std::size_t k = 0; k < r; ++k) {
        if (masks[j][k] && !joined[k]) {
          joined[k] = true;
          grows = true;
        }
      }
      if (!grows || seen.contains(joined)) continue;
      add(closure.close(std::move(joined)));
    }
  }

  std::vector<NormalSubgroup> result;
  for (const auto& mask : masks) result.push_back({closure.to_subgroup(mask), false});
  std::sort(result.begin(), result.end(), [](const NormalSubgroup& a, const NormalSubgroup& b) {
    if (a.subgroup.order() != b.subgroup.order()) return a.subgroup.order() < b.subgroup.order();
    return a.subgroup.members() < b.subgroup.members();
  });
  for (auto& candidate : result) {
    if (candidate.subgroup.is_trivial()) continue;
    candidate.minimal = std::none_of(result.begin(), result.end(), [&](const NormalSubgroup& other) {
      return !other.subgroup.is_trivial() && other.subgroup.order() < candidate.subgroup.order() &&
             other.subgroup.is_subset_of(candidate.subgroup);
    });
  }
  return result;
}

inline std::vector<Subgroup> minimal_normal_subgroups(const GroupPtr& g) {
  std::vector<Subgroup> out;
  for (auto& n : normal_subgroups(g))
    if (n.minimal) out.push_back(std::move(n.subgroup));
  return out;
}

/// Re-enumerates a subgroup as a standalone group on the same points.
inline GroupPtr as_group(const Subgroup& s, std::string name = {}) {
  const auto& g = s.parent();
  std::vector<Permutation> elements;
  elements.reserve(s.order());
  for (auto e : s.members()) elements.push_back(g->element(e));
  std::vector<Permutation> gens;
  for (auto e : generating_set(s)) gens.push_back(g->element(e));
  if (gens.empty()) gens.push_back(g->element(0));
  return Group::from_elements(std::move(elements), std::move(gens), std::move(name));
}

/// G/N realized by the right-multiplication action of G on the cosets of N.
struct Quotient {
  GroupPtr group;
  std::vector<Elem> image;  // element of G -> element of G/N

  Subgroup map(const Subgroup& s) const {
    std::vector<Elem> members;
    for (auto e : s.members()) members.push_back(image[e]);
    return Subgroup(group, std::move(members));
  }

  /// Full preimage in G of a subgroup of G/N.
  Subgroup preimage(const GroupPtr& parent, const Subgroup& s) const {
    std::vector<Elem> members;
    for (Elem e = 0; e < parent->order(); ++e)
      if (s.contains(image[e])) members.push_back(e);
    return Subgroup(parent, std::move(members));
  }
};

inline Quotient quotient_group(const Subgroup& n, std::string name = {}) {
  if (!is_normal(n)) throw NotNormal("quotient requires a normal subgroup");
  const auto& g = n.parent();
  constexpr auto unset = static_cast<Elem>(-1);
  std::vector<Elem> coset(g->order(), unset);
  std::vector<Elem> reps;
  for (Elem x = 0; x < g->order(); ++x) {
    if (coset[x] != unset) continue;
    auto id = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (auto m : n.members()) coset[g->mul(m, x)] = id;
  }
  const auto index = reps.size();
  auto action = [&](Elem x) {
    std::vector<Point> images(index);
    for (std::size_t c = 0; c < index; ++c) images[c] = coset[g->mul(reps[c], x)];
    return Permutation(std::move(images));
  };

  std::vector<Permutation> gens;
  for (auto s : g->generators()) gens.push_back(action(s));
  std::vector<Permutation> elements;
  for (auto r : reps) elements.push_back(action(r));
  if (name.empty()) name = g->name() + "/" + std::to_string(n.order());
  Quotient q{Group::from_elements(elements, std::move(gens), std::move(name)), {}};
  q.image.resize(g->order());
  for (Elem x = 0; x < g->order(); ++x) q.image[x] = *q.group->index_of(elements[coset[x]]);
  return q;
}

inline bool is_p_power(std::uint64_t n, std::uint64_t p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

/// A Sylow p-subgroup, grown one normalizing p-element at a time.
///
/// Candidates are scanned in element order, which keeps the result
/// deterministic. A proper p-subgroup P is always normalized by some
/// p-element outside it, so the scan never comes up empty.
inline Subgroup sylow_subgroup(const GroupPtr& g, std::uint64_t p) {
  require_prime(p);
  const auto target = p_part(g->order(), p);
  std::vector<Elem> gens;
  Subgroup current = trivial_subgroup(g);
  while (current.order() < target) {
    bool grown = false;
    for (Elem x = 1; x < g->order(); ++x) {
      if (current.contains(x) || !is_p_power(g->element_order(x), p)) continue;
      if (!normalizes(current, gens, x)) continue;
      gens.push_back(x);
      current = generate(g, gens);
      grown = true;
      break;
    }
    if (!grown) throw Error("Sylow search stalled");
  }
  return current;
}

inline std::uint64_t count_sylow(const GroupPtr& g, std::uint64_t q) {
  require_prime(q);
  if (g->order() % q != 0) return 1;
  return normalizer(sylow_subgroup(g, q)).index();
}

} // namespace codeg
