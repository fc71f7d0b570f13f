#include <gtest/gtest.h>

#include "support.hpp"

using namespace codeg;
using testing_support::make;

namespace {

const OracleResult& oracle_named(const GroupRecord& r, const std::string& name) {
  for (const auto& o : r.oracles)
    if (o.name == name) return o;
  throw std::out_of_range(name);
}

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

} // namespace

// ---------------------------------------------------------------------------
// *-group predicate and certificates

TEST(StarGroup, Predicate) {
  EXPECT_TRUE(is_star_group(character_table(make("symmetric 4"))));
  EXPECT_FALSE(is_star_group(character_table(make("quaternion 16"))));
  EXPECT_FALSE(is_star_group(character_table(make("quaternion 8"))));
  EXPECT_FALSE(is_star_group(character_table(make("cyclic 12"))));
  EXPECT_FALSE(is_star_group(character_table(make("file sg480_1188.gens"))));
}

TEST(Classify, SymmetricFourIsTwoFrobenius) {
  auto c = classify(make("symmetric 4"));
  EXPECT_TRUE(c.is_star);
  EXPECT_EQ(c.branch, Branch::TwoFrobenius);
  ASSERT_TRUE(c.two_frobenius);
  EXPECT_EQ(c.two_frobenius->K_order, 4u);
  EXPECT_EQ(c.two_frobenius->H_order, 12u);
  EXPECT_EQ(c.two_frobenius->p, 3u);
  EXPECT_EQ(c.two_frobenius->R_order, 2u);
  EXPECT_EQ(c.two_frobenius->R0_order, 2u);
  EXPECT_EQ(c.two_frobenius->cod_pair, (IntSet{3, 8}));
  EXPECT_EQ(c.cod_nonlinear, (IntSet{3, 8}));
  EXPECT_FALSE(c.failure_reason);
}

TEST(Classify, FrobeniusQuaternionBranch) {
  auto c = classify(make("cpk_q8 3 2 builtin"));
  EXPECT_TRUE(c.is_star);
  EXPECT_EQ(c.branch, Branch::FrobeniusCpkQ8);
  ASSERT_TRUE(c.frobenius);
  EXPECT_EQ(c.frobenius->p, 3u);
  EXPECT_EQ(c.frobenius->k, 2u);
  EXPECT_EQ(c.frobenius->complement_order, 8u);
  EXPECT_EQ(c.cod_nonlinear, (IntSet{4, 9}));
}

TEST(Classify, NegativeExamples) {
  auto nil = classify(make("direct cyclic 3 x quaternion 8"));
  EXPECT_FALSE(nil.is_star);
  EXPECT_EQ(nil.branch, Branch::NotStar);
  EXPECT_TRUE(has(nil.notes, "NILPOTENT"));
  EXPECT_EQ(nil.reason, "CODEGREES_NOT_COPRIME");

  auto q16 = classify(make("quaternion 16"));
  EXPECT_EQ(q16.cod_nonlinear, (IntSet{4, 8}));
  EXPECT_EQ(q16.reason, "CODEGREES_NOT_COPRIME");

  auto q8 = classify(make("quaternion 8"));
  EXPECT_EQ(q8.reason, "SINGLE_CODEGREE");

  auto d30 = classify(make("dihedral 30"));
  EXPECT_FALSE(d30.is_star);
  EXPECT_TRUE(has(d30.notes, "FROBENIUS_MIXED_KERNEL"));

  EXPECT_EQ(classify(make("cyclic 5")).reason, "ABELIAN");
  for (const auto& c : {nil, q16, q8, d30}) EXPECT_FALSE(c.failure_reason);
}

TEST(Classify, TwoFrobeniusWithReducibleKernelIsNotStar) {
  // (C2^2 x C2^2) : S3 with S3 = GL(2,2) acting diagonally: K is not minimal normal
  auto g = make("affine 2 4 2 0 1 0 0 1 1 0 0 0 0 0 1 0 0 1 1 0 1 0 0 1 0 0 0 0 0 0 1 0 0 1 0");
  EXPECT_EQ(g->order(), 96u);
  GroupAnalysis a(g);
  ASSERT_TRUE(a.two_frobenius);
  auto check = check_two_frobenius_branch(a);
  EXPECT_TRUE(has(check.violations, "K_NOT_UNIQUE_MINIMAL"));
  auto c = classify(a);
  EXPECT_FALSE(c.is_star);
  EXPECT_FALSE(c.failure_reason);
}

TEST(Classify, RankFourQuaternionActionIsNotStar) {
  auto c = classify(make("cpk_q8 3 4 builtin"));
  EXPECT_EQ(c.cod_nonlinear, (IntSet{4, 9, 81}));
  EXPECT_FALSE(c.is_star);
  EXPECT_TRUE(has(c.notes, "FROBENIUS"));
  EXPECT_FALSE(c.failure_reason);
}

TEST(Classify, CommittedOrder480MatchesSemilinearConstruction) {
  // F16 : (C15 : C2) is built independently of the committed generators and shares their codegrees
  auto file = character_table(make("file sg480_1188.gens"));
  auto built = character_table(make("semilinear 2 4 15 2"));
  EXPECT_EQ(file.group->order(), 480u);
  EXPECT_EQ(cod_nonlinear(file), cod_nonlinear(built));
  EXPECT_EQ(cod_all(file), cod_all(built));
  auto file_degrees = file.degrees, built_degrees = built.degrees;
  std::sort(file_degrees.begin(), file_degrees.end());
  std::sort(built_degrees.begin(), built_degrees.end());
  EXPECT_EQ(file_degrees, built_degrees);
  EXPECT_EQ(classify(make("file sg480_1188.gens")).reason, "CODEGREES_NOT_COPRIME");
}

TEST(Classify, BranchPredictionsForConstructedFamilies) {
  struct Case {
    std::string spec;
    Branch branch;
    IntSet cod;
  };
  const std::vector<Case> cases = {
      {"cpk_q8 5 2 builtin", Branch::FrobeniusCpkQ8, {4, 25}},
      {"cpk_q8 7 2 builtin", Branch::FrobeniusCpkQ8, {4, 49}},
      {"semilinear 2 2 3 2", Branch::TwoFrobenius, {3, 8}},
      {"semilinear 2 3 7 3", Branch::TwoFrobenius, {7, 24}},
      {"semilinear 2 4 5 2", Branch::TwoFrobenius, {5, 32}},
      {"semilinear 2 5 31 5", Branch::TwoFrobenius, {31, 160}},
  };
  for (const auto& c : cases) {
    SCOPED_TRACE(c.spec);
    auto cert = classify(make(c.spec));
    EXPECT_TRUE(cert.is_star);
    EXPECT_EQ(cert.branch, c.branch);
    EXPECT_EQ(cert.cod_nonlinear, c.cod);
    if (cert.two_frobenius) {
      const auto& w = *cert.two_frobenius;
      EXPECT_EQ(w.cod_pair, (IntSet{w.p, w.K_order * w.R0_order}));
    }
  }
}

// ---------------------------------------------------------------------------
// lemma oracles

TEST(Oracles, SylowFrobeniusAction) {
  EXPECT_TRUE(oracle_qian1(character_table(make("symmetric 4"))).empty());
  EXPECT_TRUE(oracle_qian1(character_table(make("cpk_q8 3 2 builtin"))).empty());
  auto a4 = oracle_qian1(character_table(make("alternating 4")));
  ASSERT_EQ(a4.size(), 1u);
  EXPECT_EQ(a4[0].first, 3u);
  EXPECT_TRUE(a4[0].second);
  EXPECT_THROW(oracle_qian1(character_table(make("cyclic 4"))), PreconditionError);
}

TEST(Oracles, NqCounting) {
  auto a4 = make("alternating 4");
  auto v4 = normal_subgroups(a4)[1].subgroup;
  EXPECT_EQ(oracle_nq_count(a4, v4, 3), NqOutcome::NotApplicable);

  auto f21 = make("semilinear 7 1 3 1");
  auto c7 = normal_subgroups(f21)[1].subgroup;
  EXPECT_EQ(c7.order(), 7u);
  EXPECT_EQ(oracle_nq_count(f21, c7, 3), NqOutcome::NotApplicable);

  auto abelian = make("direct cyclic 3 x dihedral 4");
  auto v = sylow_subgroup(abelian, 2);
  EXPECT_EQ(oracle_nq_count(abelian, v, 3), NqOutcome::PreconditionRejected);

  // S4 on V4 with q = 3: C_G(v) = D8 has no normal Sylow 3 either
  auto s4 = make("symmetric 4");
  EXPECT_EQ(oracle_nq_count(s4, normal_subgroups(s4)[1].subgroup, 3), NqOutcome::NotApplicable);
  EXPECT_EQ(oracle_nq_count(s4, normal_subgroups(s4)[1].subgroup, 2), NqOutcome::Pass);
  EXPECT_THROW(oracle_nq_count(s4, normal_subgroups(s4)[1].subgroup, 4), NotPrime);
}

TEST(Oracles, Solvability) {
  EXPECT_TRUE(oracle_solvability(character_table(make("symmetric 4"))));
  EXPECT_TRUE(oracle_solvability(character_table(make("alternating 5"))));
  EXPECT_TRUE(oracle_solvability(character_table(make("quaternion 8"))));
  EXPECT_EQ(cod_nonlinear(character_table(make("alternating 5"))), (IntSet{12, 15, 20}));
}

TEST(Oracles, DirectProduct) {
  auto l = character_table(make("quaternion 8"));
  auto g = character_table(make("direct cyclic 3 x quaternion 8"));
  EXPECT_TRUE(oracle_direct_product(g, l, 3));
  EXPECT_EQ(cod_nonlinear(g), (IntSet{4, 12}));
  auto s3 = character_table(make("symmetric 3"));
  EXPECT_TRUE(oracle_direct_product(character_table(make("direct cyclic 5 x symmetric 3")), s3, 5));
  // a table that is not a direct product with C_5 fails the identity
  EXPECT_FALSE(oracle_direct_product(character_table(make("dihedral 30")), s3, 5));
  EXPECT_THROW(oracle_direct_product(g, l, 2), PreconditionError);
}

TEST(Oracles, DivisibilityLemmas) {
  for (const auto& spec : testing_support::small_specs()) {
    SCOPED_TRACE(spec);
    auto g = make(spec);
    if (g->order() > 200) continue;
    GroupAnalysis a(g);
    std::vector<DivisibilityViolation> v;
    oracle_subnormal_divisibility(a.table, a.normals, v);
    EXPECT_TRUE(v.empty());
    oracle_abelian_kernel(a.table, a.normals, v);
    EXPECT_TRUE(v.empty());
  }
}

TEST(Oracles, SingletonStructureAndQuaternionRemark) {
  for (const auto& spec : {"alternating 4", "semilinear 7 1 3 1", "semilinear 3 2 8 1", "dihedral 10", "quaternion 8"}) {
    GroupAnalysis a(make(spec));
    EXPECT_EQ(cod_nonlinear(a.table).size(), 1u) << spec;
    EXPECT_TRUE(oracle_singleton_structure(a)) << spec;
  }
  for (unsigned k = 3; k <= 6; ++k) {
    auto t = character_table(make("quaternion " + std::to_string(1u << k)));
    EXPECT_EQ(cod_nonlinear(t).size() == 1, k == 3);
  }
}

TEST(Oracles, ComponentCount) {
  EXPECT_TRUE(oracle_component_count(character_table(make("symmetric 4"))));
  EXPECT_TRUE(oracle_component_count(character_table(make("cpk_q8 5 2 builtin"))));
}

// ---------------------------------------------------------------------------
// suite runner and report

TEST(Suite, SingleGroup) {
  auto report = run_suite({parse_spec("symmetric 4")});
  ASSERT_EQ(report.groups.size(), 1u);
  const auto& r = report.groups[0];
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.certificate->branch, Branch::TwoFrobenius);
  for (const auto& o : r.oracles) EXPECT_NE(o.status, OracleStatus::Fail) << o.name;
  EXPECT_EQ(oracle_named(r, "table_validity").status, OracleStatus::Pass);
  EXPECT_EQ(report.failures(), 0u);
}

TEST(Suite, EmptyManifestRejected) { EXPECT_THROW(run_suite({}), PreconditionError); }

TEST(Suite, BuildErrorsBecomeRecords) {
  auto report = run_suite({parse_spec("symmetric 4"), parse_spec("cpk_q8 2 2 builtin"), parse_spec("symmetric 9")});
  ASSERT_EQ(report.groups.size(), 3u);
  EXPECT_TRUE(report.groups[0].passed());
  EXPECT_TRUE(report.groups[1].error);
  EXPECT_TRUE(report.groups[2].error);
  EXPECT_EQ(report.failures(), 2u);
  auto json = to_json(report);
  EXPECT_EQ(json["summary"]["errors"], 2);
  EXPECT_EQ(json["groups"][1]["passed"], false);
}

TEST(Suite, DirectProductOracleRuns) {
  auto r = run_one(parse_spec("direct cyclic 5 x symmetric 3"));
  EXPECT_EQ(oracle_named(r, "direct_product").status, OracleStatus::Pass);
  auto q = run_one(parse_spec("direct quaternion 8 x cyclic 3"));
  EXPECT_EQ(oracle_named(q, "direct_product").status, OracleStatus::Pass);
}

TEST(Suite, ReportIsDeterministicAcrossJobCounts) {
  std::vector<GroupSpec> specs;
  for (const auto& s : testing_support::small_specs()) specs.push_back(parse_spec(s, testing_support::data_dir()));
  SuiteOptions one;
  SuiteOptions four;
  four.jobs = 4;
  auto a = to_json(run_suite(specs, one)).dump(2);
  auto b = to_json(run_suite(specs, four)).dump(2);
  auto c = to_json(run_suite(specs, four)).dump(2);
  EXPECT_EQ(a, b);
  EXPECT_EQ(b, c);
}

TEST(Suite, JsonSchema) {
  auto json = to_json(run_suite({parse_spec("symmetric 4"), parse_spec("quaternion 8")}));
  std::vector<std::string> top;
  for (auto it = json.begin(); it != json.end(); ++it) top.push_back(it.key());
  EXPECT_EQ(top, (std::vector<std::string>{"groups", "summary"}));
  const auto& g = json["groups"][0];
  std::vector<std::string> keys;
  for (auto it = g.begin(); it != g.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"name", "spec", "order", "passed", "error", "cod_all", "cod_nonlinear",
                                            "graph_nonlinear", "graph_all", "certificate", "oracles"}));
  EXPECT_EQ(g["graph_nonlinear"]["component_count"], 2);
  EXPECT_EQ(json["summary"]["groups"], 2);
  EXPECT_EQ(json["summary"]["star_groups"], 1);
  // tallies add up to the per-group records
  std::size_t total = 0;
  for (const auto& [name, t] : json["summary"]["oracles"].items())
    total += t["pass"].get<std::size_t>() + t["fail"].get<std::size_t>() + t["skip"].get<std::size_t>();
  EXPECT_EQ(total, json["groups"][0]["oracles"].size() + json["groups"][1]["oracles"].size());
}

TEST(Suite, DefaultManifestParses) {
  auto specs = read_manifest((testing_support::data_dir() / "default.manifest").string());
  EXPECT_GE(specs.size(), 40u);
  for (const auto& s : specs)
    if (s.kind == GroupSpec::Kind::File) EXPECT_TRUE(std::filesystem::exists(s.path)) << s.path;
}
