#pragma once

#include <atomic>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "classifier.hpp"
#include "constructions.hpp"

namespace codeg {

struct SuiteOptions {
  unsigned jobs = 1;
  std::size_t bound = kDefaultOrderBound;
  std::uint64_t lemma_order_limit = 200;  // the costlier lemma oracles run up to this order
};

enum class OracleStatus { Pass, Fail, Skip };

inline std::string to_string(OracleStatus s) {
  switch (s) {
  case OracleStatus::Pass: return "pass";
  case OracleStatus::Fail: return "fail";
  case OracleStatus::Skip: return "skip";
  }
  return "?";
}

struct OracleResult {
  std::string name;
  OracleStatus status = OracleStatus::Skip;
  std::string detail;
};

struct GraphSummary {
  std::vector<std::uint64_t> vertices;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  std::vector<std::vector<std::uint64_t>> components;
};

struct GroupRecord {
  std::string spec;
  std::string name;
  std::uint64_t order = 0;
  std::optional<std::string> error;
  IntSet cod_all;
  IntSet cod_nonlinear;
  std::optional<GraphSummary> graph_nonlinear;  // Gamma(G|G')
  std::optional<GraphSummary> graph_all;        // Gamma(G)
  std::optional<Certificate> certificate;
  std::vector<OracleResult> oracles;

  bool passed() const {
    if (error || !certificate || certificate->failure_reason) return false;
    return std::none_of(oracles.begin(), oracles.end(),
                        [](const OracleResult& o) { return o.status == OracleStatus::Fail; });
  }
};

struct RunReport {
  std::vector<GroupRecord> groups;

  std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(groups.begin(), groups.end(), [](const GroupRecord& r) { return !r.passed(); }));
  }
};

inline GraphSummary summarize(const PrimeGraph& g) { return {g.vertices, g.edges, g.components}; }

namespace detail {

inline OracleResult verdict(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok ? OracleStatus::Pass : OracleStatus::Fail, std::move(detail)};
}

inline OracleResult skipped(std::string name, std::string detail) {
  return {std::move(name), OracleStatus::Skip, std::move(detail)};
}

inline std::string join_violations(const std::vector<DivisibilityViolation>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size() && i < 4; ++i) out += (i ? "; " : "") + v[i].detail;
  return out;
}

inline OracleResult check_group_invariants(const GroupPtr& g) {
  std::uint64_t total = 0;
  for (const auto& c : g->classes()) {
    if (g->order() % c.size() != 0) return verdict("group_invariants", false, "class size does not divide |G|");
    total += c.size();
  }
  if (total != g->order()) return verdict("group_invariants", false, "class sizes do not sum to |G|");
  if (g->classes()[0].size() != 1) return verdict("group_invariants", false, "identity class is not a singleton");
  for (auto q : prime_set(g->order())) {
    auto n = count_sylow(g, q);
    if (n % q != 1 % q || g->order() % n != 0)
      return verdict("group_invariants", false, "n_" + std::to_string(q) + " = " + std::to_string(n));
    if (sylow_subgroup(g, q).order() != p_part(g->order(), q))
      return verdict("group_invariants", false, "Sylow " + std::to_string(q) + "-subgroup has the wrong order");
  }
  return verdict("group_invariants", true);
}

/// Runs the N_q oracle on every elementary abelian minimal normal subgroup and prime.
inline OracleResult check_nq(const GroupAnalysis& a) {
  std::size_t pass = 0, fail = 0, not_applicable = 0, rejected = 0;
  for (const auto& n : a.normals) {
    if (!n.minimal || !is_elementary_abelian(n.subgroup).holds) continue;
    for (auto q : prime_set(a.group->order())) {
      switch (oracle_nq_count(a.group, n.subgroup, q)) {
      case NqOutcome::Pass: ++pass; break;
      case NqOutcome::Fail: ++fail; break;
      case NqOutcome::NotApplicable: ++not_applicable; break;
      case NqOutcome::PreconditionRejected: ++rejected; break;
      }
    }
  }
  auto detail = "pass=" + std::to_string(pass) + " fail=" + std::to_string(fail) +
                " not-applicable=" + std::to_string(not_applicable) + " rejected=" + std::to_string(rejected);
  if (pass + fail == 0) return skipped("nq_count", detail);
  return verdict("nq_count", fail == 0, detail);
}

/// For `direct <C_p> x <L>` (either order) with p prime and coprime to |L|.
inline OracleResult check_direct_product(const GroupSpec& spec, const CharacterTable& t, std::size_t bound) {
  const std::string name = "direct_product";
  if (spec.kind != GroupSpec::Kind::DirectProduct) return skipped(name, "not a direct product");
  for (int side = 0; side < 2; ++side) {
    const auto& c = spec.factors[side];
    const auto& other = spec.factors[1 - side];
    if (c.kind != GroupSpec::Kind::Cyclic || !is_prime(c.params[0])) continue;
    auto p = c.params[0];
    auto l = build_from_spec(other, bound);
    if (l->order() % p == 0) continue;
    auto lt = character_table(l);
    return verdict(name, oracle_direct_product(t, lt, p), "p=" + std::to_string(p));
  }
  return skipped(name, "no prime cyclic factor coprime to the other");
}

inline void analyse(const GroupSpec& spec, const SuiteOptions& options, GroupRecord& r) {
  auto g = build_from_spec(spec, options.bound);
  r.name = g->name();
  r.order = g->order();
  GroupAnalysis a(g);
  const auto& t = a.table;

  r.cod_all = cod_all(t);
  r.cod_nonlinear = cod_nonlinear(t);
  r.graph_all = summarize(prime_graph(r.cod_all));
  if (!r.cod_nonlinear.empty()) r.graph_nonlinear = summarize(prime_graph(r.cod_nonlinear));
  r.certificate = classify(a);
  const auto& cert = *r.certificate;

  auto validity = validate_table(t);
  r.oracles.push_back(verdict("table_validity", validity.ok()));
  r.oracles.push_back(check_group_invariants(g));

  const bool lemma_scale = g->order() <= options.lemma_order_limit;
  if (lemma_scale) {
    std::vector<DivisibilityViolation> v;
    auto n = oracle_subnormal_divisibility(t, a.normals, v);
    r.oracles.push_back(verdict("subnormal_divisibility", v.empty(),
                                v.empty() ? std::to_string(n) + " pairs" : join_violations(v)));
    v.clear();
    n = oracle_abelian_kernel(t, a.normals, v);
    r.oracles.push_back(
        verdict("abelian_kernel", v.empty(), v.empty() ? std::to_string(n) + " pairs" : join_violations(v)));
    if (g->is_abelian()) {
      r.oracles.push_back(skipped("sylow_frobenius_action", "abelian"));
    } else {
      auto primes = oracle_qian1(t);
      bool ok = std::all_of(primes.begin(), primes.end(), [](const auto& x) { return x.second; });
      std::string detail;
      for (const auto& [p, pass] : primes) detail += (detail.empty() ? "" : " ") + std::to_string(p);
      if (primes.empty())
        r.oracles.push_back(skipped("sylow_frobenius_action", "no qualifying prime"));
      else
        r.oracles.push_back(verdict("sylow_frobenius_action", ok, "primes " + detail));
    }
    r.oracles.push_back(check_nq(a));
  } else {
    const std::string why = "order above " + std::to_string(options.lemma_order_limit);
    for (auto name : {"subnormal_divisibility", "abelian_kernel", "sylow_frobenius_action", "nq_count"})
      r.oracles.push_back(skipped(name, why));
  }

  r.oracles.push_back(verdict("solvability", oracle_solvability(t)));
  r.oracles.push_back(check_direct_product(spec, t, options.bound));
  r.oracles.push_back(verdict("non_nilpotency", !(cert.is_star && a.nilpotent)));
  if (a.frobenius && prime_set(a.frobenius->kernel.order()).size() > 1)
    r.oracles.push_back(verdict("mixed_kernel", !cert.is_star));
  else
    r.oracles.push_back(skipped("mixed_kernel", "no Frobenius kernel with two or more primes"));
  if (r.cod_nonlinear.size() == 1)
    r.oracles.push_back(verdict("singleton_structure", oracle_singleton_structure(a)));
  else
    r.oracles.push_back(skipped("singleton_structure", "cod(G|G') is not a singleton"));
  if (r.cod_nonlinear.size() > 1 && pairwise_coprime(r.cod_nonlinear))
    r.oracles.push_back(verdict("component_count", oracle_component_count(t)));
  else
    r.oracles.push_back(skipped("component_count", "not a *-group"));
  if (is_generalized_quaternion(g))
    r.oracles.push_back(verdict("generalized_quaternion", (r.cod_nonlinear.size() == 1) == (g->order() == 8)));
  else
    r.oracles.push_back(skipped("generalized_quaternion", "not generalized quaternion"));
}

} // namespace detail

/// Runs the full pipeline on one spec; build or computation errors become the record's error.
inline GroupRecord run_one(const GroupSpec& spec, const SuiteOptions& options = {}) {
  GroupRecord r;
  r.spec = spec.text;
  r.name = spec.name.empty() ? spec.text : spec.name;
  try {
    detail::analyse(spec, options, r);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

/// Processes the manifest with `options.jobs` workers; records stay in manifest order.
inline RunReport run_suite(const std::vector<GroupSpec>& manifest, const SuiteOptions& options = {}) {
  if (manifest.empty()) throw PreconditionError("manifest is empty");
  RunReport report;
  report.groups.resize(manifest.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < manifest.size(); i = next++) report.groups[i] = run_one(manifest[i], options);
  };
  const auto jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(manifest.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return report;
}

// ---------------------------------------------------------------------------
// JSON

using Json = nlohmann::ordered_json;

inline Json to_json(const GraphSummary& g) {
  Json edges = Json::array();
  for (auto [p, q] : g.edges) edges.push_back({p, q});
  return Json{{"vertices", g.vertices},
              {"edges", edges},
              {"components", g.components},
              {"component_count", g.components.size()}};
}

inline Json to_json(const Certificate& c) {
  Json j;
  j["is_star"] = c.is_star;
  j["branch"] = to_string(c.branch);
  j["cod_nonlinear"] = c.cod_nonlinear;
  if (c.frobenius) {
    const auto& f = *c.frobenius;
    j["frobenius"] = {{"p", f.p}, {"k", f.k}, {"kernel_order", f.kernel_order}, {"complement_order", f.complement_order}};
  } else {
    j["frobenius"] = nullptr;
  }
  if (c.two_frobenius) {
    const auto& w = *c.two_frobenius;
    j["two_frobenius"] = {{"K_order", w.K_order}, {"H_order", w.H_order}, {"R_order", w.R_order},
                          {"R0_order", w.R0_order}, {"p", w.p},             {"cod_pair", w.cod_pair}};
  } else {
    j["two_frobenius"] = nullptr;
  }
  j["reason"] = c.reason;
  j["notes"] = c.notes;
  j["violations"] = c.violations;
  j["failure_reason"] = c.failure_reason ? Json(*c.failure_reason) : Json(nullptr);
  return j;
}

inline Json to_json(const GroupRecord& r) {
  Json j;
  j["name"] = r.name;
  j["spec"] = r.spec;
  j["order"] = r.order;
  j["passed"] = r.passed();
  j["error"] = r.error ? Json(*r.error) : Json(nullptr);
  j["cod_all"] = r.cod_all;
  j["cod_nonlinear"] = r.cod_nonlinear;
  j["graph_nonlinear"] = r.graph_nonlinear ? to_json(*r.graph_nonlinear) : Json(nullptr);
  j["graph_all"] = r.graph_all ? to_json(*r.graph_all) : Json(nullptr);
  j["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  Json oracles = Json::object();
  for (const auto& o : r.oracles) oracles[o.name] = {{"status", to_string(o.status)}, {"detail", o.detail}};
  j["oracles"] = oracles;
  return j;
}

inline Json summary_json(const RunReport& report) {
  std::map<std::string, std::map<std::string, std::size_t>> tallies;
  std::vector<std::string> oracle_order;
  std::map<std::string, std::size_t> branches{{"FROBENIUS_CPK_Q8", 0}, {"TWO_FROBENIUS", 0}, {"NOT_STAR", 0}};
  std::size_t errors = 0, star = 0, theorem_a = 0, converse = 0;
  for (const auto& r : report.groups) {
    if (r.error) ++errors;
    if (r.certificate) {
      ++branches[to_string(r.certificate->branch)];
      if (r.certificate->is_star) ++star;
      if (r.certificate->failure_reason == std::optional<std::string>("THEOREM_A_VIOLATION")) ++theorem_a;
      if (r.certificate->failure_reason == std::optional<std::string>("CONVERSE_VIOLATION")) ++converse;
    }
    for (const auto& o : r.oracles) {
      if (!tallies.count(o.name)) oracle_order.push_back(o.name);
      ++tallies[o.name][to_string(o.status)];
    }
  }
  Json s;
  s["groups"] = report.groups.size();
  s["passed"] = report.groups.size() - report.failures();
  s["failed"] = report.failures();
  s["errors"] = errors;
  s["star_groups"] = star;
  s["branches"] = {{"FROBENIUS_CPK_Q8", branches["FROBENIUS_CPK_Q8"]},
                   {"TWO_FROBENIUS", branches["TWO_FROBENIUS"]},
                   {"NOT_STAR", branches["NOT_STAR"]}};
  s["theorem_a_violations"] = theorem_a;
  s["converse_violations"] = converse;
  Json oracles = Json::object();
  for (const auto& name : oracle_order) {
    auto& t = tallies[name];
    oracles[name] = {{"pass", t["pass"]}, {"fail", t["fail"]}, {"skip", t["skip"]}};
  }
  s["oracles"] = oracles;
  return s;
}

inline Json to_json(const RunReport& report) {
  Json groups = Json::array();
  for (const auto& r : report.groups) groups.push_back(to_json(r));
  return Json{{"groups", groups}, {"summary", summary_json(report)}};
}

} // namespace codeg
