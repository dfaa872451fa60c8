// The verification suites over the default catalog selection, plus the
// driver's failure and budget paths.

#include <gtest/gtest.h>

#include <map>

#include "pgroup/pgroup.hpp"

using namespace pgroup;

namespace {

std::string failures(const std::vector<PropertyResult>& rs) {
  std::string s;
  for (const auto& r : rs)
    if (r.outcome == Outcome::Fail) s += r.property + " on " + r.group + ": " + r.detail + "\n";
  return s;
}

class SuiteTest : public ::testing::TestWithParam<std::string> {};

}  // namespace

TEST_P(SuiteTest, PassesOnDefaultSelection) {
  VerifyOptions opt;
  auto rs = run_verify(GetParam(), opt);
  EXPECT_FALSE(rs.empty());
  EXPECT_TRUE(all_passed(rs)) << failures(rs);
  for (const auto& r : rs) EXPECT_EQ(r.suite, GetParam());
}

INSTANTIATE_TEST_SUITE_P(AllSuites, SuiteTest, ::testing::ValuesIn(verify_suites()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (char& c : s)
                             if (c == '-') c = '_';
                           return s;
                         });

TEST(Verify, EveryPropertyRunsSomewhere) {
  VerifyOptions opt;
  opt.extended = true;
  std::vector<CatalogInstance> picked;
  for (const auto& c : select_instances(opt))
    if (c.ref.name != "kirillov_quotient" || instance_order(c) <= 81) picked.push_back(c);
  auto rs = run_suites(verify_suites(), picked, opt);
  std::map<std::string, int> seen;
  for (const auto& r : rs) ++seen[r.property];
  for (const auto& p : properties()) EXPECT_GT(seen[p.name], 0) << p.name;
  EXPECT_TRUE(all_passed(rs)) << failures(rs);
}

TEST(Verify, ExtendedSelectionAddsLargeEntries) {
  VerifyOptions opt;
  auto base = select_instances(opt);
  opt.extended = true;
  auto ext = select_instances(opt);
  EXPECT_GT(ext.size(), base.size());
  for (const auto& c : base) EXPECT_LE(instance_order(c), 729u);
  bool has_2187 = false, has_3125 = false;
  for (const auto& c : ext) {
    has_2187 |= instance_order(c) == 2187;
    has_3125 |= instance_order(c) == 3125;
  }
  EXPECT_TRUE(has_2187);
  EXPECT_TRUE(has_3125);
}

TEST(Verify, UnknownSuiteIsRejected) {
  try {
    run_verify("nosuch", {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownName);
  }
}

TEST(Verify, WrongExpectationIsReportedAsFailure) {
  VerifyOptions opt;
  opt.max_order = 27;
  opt.data_dir = std::string(PGROUP_DATA_DIR) + "/../tests/data/wrong";
  auto rs = run_verify("catalog-regression", opt);
  EXPECT_FALSE(all_passed(rs));
  bool heisenberg_failed = false;
  for (const auto& r : rs)
    if (r.group == "heisenberg(prime=3)" && r.property == "expected-invariants")
      heisenberg_failed = r.outcome == Outcome::Fail && r.detail.find("pwc") != std::string::npos;
  EXPECT_TRUE(heisenberg_failed);
  Json j = results_json(rs);
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_GT(j["failed"].get<int>(), 0);
}

TEST(Verify, BudgetExceededPropagates) {
  VerifyOptions opt;
  opt.budget = 5;
  opt.max_order = 27;
  try {
    run_verify("eta-lemmas", opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}

TEST(Verify, TextTableEndsWithSummary) {
  VerifyOptions opt;
  opt.max_order = 27;
  auto rs = run_verify("omega", opt);
  std::string t = results_text(rs);
  EXPECT_NE(t.find(std::to_string(rs.size()) + " checks, 0 failed"), std::string::npos);
}
