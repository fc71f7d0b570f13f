#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "codeg/codeg.hpp"
#include "oracle/brute_group.hpp"

namespace testing_support {

inline std::filesystem::path data_dir() { return std::filesystem::path(CODEG_SOURCE_DIR) / "data"; }

inline codeg::GroupPtr make(const std::string& spec) { return codeg::build_from_spec(codeg::parse_spec(spec, data_dir())); }

/// The element of `g` with the given 1-based cycle notation.
inline codeg::Elem elem(const codeg::GroupPtr& g, const std::string& cycles) {
  auto idx = g->index_of(codeg::Permutation::parse_cycles(cycles, g->degree()));
  if (!idx) throw codeg::PreconditionError("element " + cycles + " not in " + g->name());
  return *idx;
}

inline oracle::BruteGroup to_brute(const codeg::Group& g) {
  std::vector<oracle::Perm> gens;
  for (const auto& p : g.generator_perms()) gens.emplace_back(p.images().begin(), p.images().end());
  return oracle::brute_group(gens);
}

inline std::vector<std::size_t> class_sizes(const codeg::Group& g) {
  std::vector<std::size_t> out;
  for (const auto& c : g.classes()) out.push_back(c.size());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::uint64_t> orders(const std::vector<codeg::NormalSubgroup>& ns) {
  std::vector<std::uint64_t> out;
  for (const auto& n : ns) out.push_back(n.subgroup.order());
  return out;
}

/// Specs small enough for exhaustive cross-checks against the brute-force model.
inline const std::vector<std::string>& small_specs() {
  static const std::vector<std::string> specs = {
      "cyclic 6",          "cyclic 9",           "dihedral 8",          "dihedral 10",          "dihedral 12",
      "dihedral 30",       "symmetric 3",        "symmetric 4",         "alternating 4",        "alternating 5",
      "quaternion 8",      "quaternion 16",      "cpk_q8 3 2 builtin",  "semilinear 7 1 3 1",   "semilinear 5 1 4 1",
      "semilinear 3 2 8 1", "direct cyclic 3 x quaternion 8", "direct cyclic 5 x symmetric 3", "semilinear 2 3 7 3",
      "semilinear 2 4 5 2"};
  return specs;
}

} // namespace testing_support
