#include "cdes/verify.hpp"

#include <gtest/gtest.h>

namespace cdes {
namespace {

ExactInt scalar(const ReportValue& v) { return std::get<ExactInt>(v); }
const Histogram& hist(const ReportValue& v) { return std::get<Histogram>(v); }

TEST(MainTheorem, Examples) {
  auto r = verify_main_theorem(Composition({2, 2}));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(scalar(r.lhs), -2);
  EXPECT_EQ(r.count, 6U);
  r = verify_main_theorem(Composition({2, 3}));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(scalar(r.rhs), 0);
  EXPECT_EQ(r.count, 16U);
  r = verify_main_theorem(Composition({3}));
  EXPECT_EQ(scalar(r.lhs), -1);
  EXPECT_EQ(r.count, 1U);
  r = verify_main_theorem(Composition({3, 3}));
  EXPECT_EQ(scalar(r.lhs), -3);
  EXPECT_EQ(r.count, 53U);
  EXPECT_EQ(r.params, nlohmann::json({{"lambda", "3,3"}}));
}

TEST(UnimodalMu, Examples) {
  for (int n = 1; n <= 9; ++n) {
    const auto r = verify_unimodal_mu(n);
    EXPECT_TRUE(r.pass) << n;
    EXPECT_EQ(scalar(r.rhs), mobius(n));
  }
  EXPECT_EQ(verify_unimodal_mu(4).count, 2U);
  EXPECT_THROW(verify_unimodal_mu(0), std::invalid_argument);
}

TEST(Equidistribution, SmallHistograms) {
  auto r = verify_equidistribution(3);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(hist(r.lhs), (Histogram{{"{}", 0}, {"{1}", 1}, {"{1,2}", 0}, {"{2}", 1}}));
  r = verify_equidistribution(4);
  EXPECT_TRUE(r.pass);
  for (const char* k : {"{1}", "{1,2}", "{1,3}", "{2}", "{2,3}", "{3}"}) EXPECT_EQ(hist(r.lhs).at(k), 1) << k;
  EXPECT_EQ(hist(r.lhs).at("{}"), 0);
  EXPECT_EQ(hist(r.lhs).at("{1,2,3}"), 0);
}

TEST(Elizalde, Examples) {
  const auto r = verify_elizalde(3);
  EXPECT_TRUE(r.pass);
  // 12 with Des {} against 231 with Des {2}
  EXPECT_EQ(hist(r.lhs).at("{}"), 1);
  EXPECT_EQ(hist(r.rhs).at("{}"), 1);
  for (int n = 2; n <= 7; ++n) EXPECT_TRUE(verify_elizalde(n).pass) << n;
  EXPECT_THROW(verify_elizalde(1), std::invalid_argument);
}

TEST(RegularFine, OnlyAllOnesSurvives) {
  auto r = verify_regular_fine(Composition::ones(4));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(scalar(r.lhs), 24);
  r = verify_regular_fine(Composition({2, 1, 1}));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(scalar(r.lhs), 0);
}

TEST(Phi, Involution) {
  const Composition lam({1, 3, 2});
  const Permutation p = parse_permutation("412365");
  ASSERT_TRUE(is_lambda_unimodal(p, lam));
  const Permutation q = phi_involution(p, lam);
  EXPECT_EQ(to_string(q), "413265");
  EXPECT_EQ(phi_involution(q, lam), p);
  EXPECT_TRUE(verify_phi_involution(lam).pass);
  EXPECT_THROW(phi_involution(p, Composition::ones(6)), std::invalid_argument);
  EXPECT_THROW(phi_involution(parse_permutation("213"), Composition({3})), std::invalid_argument);
  EXPECT_THROW(verify_phi_involution(Composition::ones(3)), std::invalid_argument);
}

TEST(PpatChecks, ExamplesAndFibers) {
  EXPECT_TRUE(verify_ppat_examples().pass);
  EXPECT_EQ(ppat_worked_examples().size(), 3U);
  const auto r = verify_ppat_fibers(Composition({2, 2}));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(hist(r.lhs).at(fiber_key(1, parse_permutation("3421"))), 1);
}

TEST(CountChecks, Examples) {
  for (const Composition& lam : {Composition({4, 4}), Composition({2, 2, 2}), Composition({3, 1, 2})}) {
    EXPECT_TRUE(verify_necklace_counts(lam).pass) << to_string(lam);
    EXPECT_TRUE(verify_bigL_symmetry(lam).pass);
    EXPECT_TRUE(verify_a_lambda(lam).pass);
    EXPECT_TRUE(verify_cycle_necklace_relation(lam).pass);
    EXPECT_TRUE(verify_alternating_sum(lam).pass);
  }
  EXPECT_EQ(hist(verify_a_lambda(Composition({2, 2})).rhs).at("m=1"), 4);
}

TEST(TableauChecks, Examples) {
  EXPECT_TRUE(verify_rsk_descents(5).pass);
  EXPECT_TRUE(verify_mn_orthogonality(6).pass);
  EXPECT_TRUE(verify_knuth_classes(4).pass);
  EXPECT_TRUE(verify_rho_multiplicities(6).pass);
  EXPECT_EQ(hist(verify_rho_multiplicities(6).lhs).at("dimension"), 120);
}

TEST(Suite, EmptySelectionPlansNothing) {
  EXPECT_TRUE(verify_suite(6, {}).empty());
}

TEST(Suite, MainCoversEveryComposition) {
  const auto reports = verify_suite(6, {"main"});
  EXPECT_EQ(reports.size(), 63U);
  for (const auto& r : reports) {
    EXPECT_EQ(r.identity, "main");
    EXPECT_TRUE(r.pass) << r.params.dump();
  }
  EXPECT_EQ(reports.front().params, nlohmann::json({{"lambda", "1"}}));
  EXPECT_EQ(reports.back().params, nlohmann::json({{"lambda", "6"}}));
}

TEST(Suite, CountingLemmasIsOneTask) {
  const auto reports = verify_suite(3, {"counting_lemmas"});
  ASSERT_EQ(reports.size(), 1U);
  EXPECT_TRUE(reports[0].pass);
  EXPECT_EQ(to_jsonl(reports[0], Timing::omit), to_jsonl(check_counting_lemmas(), Timing::omit));
}

TEST(Suite, UnknownIdentityThrows) {
  EXPECT_THROW(verify_suite(3, {"nope"}), std::invalid_argument);
  EXPECT_THROW(verify_suite(0, {"main"}), std::invalid_argument);
}

TEST(Suite, RestrictToLambdaOrN) {
  SuiteOptions opt;
  opt.selection = {"main", "unimodal_mu"};
  opt.lambda = Composition({2, 3});
  auto tasks = plan_suite(opt);
  ASSERT_EQ(tasks.size(), 2U);
  EXPECT_EQ(tasks[0].params, nlohmann::json({{"lambda", "2,3"}}));
  EXPECT_EQ(tasks[1].params, nlohmann::json({{"n", 5}}));
  opt.lambda.reset();
  opt.n = 4;
  EXPECT_EQ(plan_suite(opt).size(), 9U);
}

TEST(Suite, EveryIdentityPassesAtSmallN) {
  for (const auto& r : verify_suite(6, all_identity_names(), 4)) EXPECT_TRUE(r.pass) << r.identity << " " << r.params.dump();
}

TEST(Suite, ParallelMatchesSerialAndIsDeterministic) {
  const auto names = all_identity_names();
  const auto a = verify_suite(5, names, 1);
  const auto b = verify_suite(5, names, 6);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(to_jsonl(a[i], Timing::omit), to_jsonl(b[i], Timing::omit));
}

TEST(Report, JsonRoundTrip) {
  for (const auto& r : verify_suite(4, {"main", "equidistribution", "counting_lemmas"})) {
    const auto j = to_json(r);
    for (const char* field : {"identity", "params", "lhs", "rhs", "pass", "count", "ms"}) EXPECT_TRUE(j.contains(field));
    const auto back = report_from_json(nlohmann::json::parse(to_jsonl(r)));
    EXPECT_EQ(to_jsonl(back), to_jsonl(r));
    EXPECT_EQ(back.pass, back.lhs == back.rhs);
  }
  EXPECT_EQ(to_json(verify_main_theorem(Composition({2, 2})), Timing::omit)["ms"], 0);
}

TEST(Report, PassIsRecomputedFromValues) {
  auto j = to_json(verify_main_theorem(Composition({2, 2})));
  j["lhs"] = "5";
  EXPECT_FALSE(report_from_json(j).pass);
}

}  // namespace
}  // namespace cdes
