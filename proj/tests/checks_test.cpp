#include <gtest/gtest.h>

#include <fstream>

#include "lambdak/checks.hpp"

namespace lambdak {
namespace {

nlohmann::json load(const std::string& name) {
  std::ifstream in(std::string(LAMBDAK_FIXTURE_DIR) + "/" + name);
  return nlohmann::json::parse(in);
}

TEST(Checks, FailureCarriesWitness) {
  // Dropping the south orientation turns the index into g^m/(g-1) + 1/(1-g).
  auto j = load("cp1_om.json");
  j["components"][1].erase("orientation");
  CheckResult r = check_cp1_localization(j, 3);
  EXPECT_EQ(r.status, CheckStatus::Fail);
  EXPECT_EQ(r.witness["m"], 0);
  EXPECT_EQ(r.to_json()["status"], "fail");
  EXPECT_TRUE(check_cp1_localization(load("cp1_om.json"), 3).passed());
}

TEST(Checks, LibraryErrorsBecomeErrorStatus) {
  CheckResult r = check_unit_identity({{{0, 1}}}, {2});
  EXPECT_EQ(r.status, CheckStatus::Error);
  EXPECT_FALSE(r.detail.empty());
  EXPECT_FALSE(r.to_json().contains("witness"));
}

TEST(Checks, UnitIdentitySkipsLevelsBelowCutoff) {
  CheckResult r = check_unit_identity({{{1, 1}}}, {1, 2, 3}, 2);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.detail, "2 cases");
}

TEST(Checks, Suites) {
  EXPECT_THROW(run_suite("bogus", {}), InputError);
  SuiteOptions bad;
  bad.d_max = 0;
  EXPECT_THROW(run_suite("gamma", bad), InputError);
  auto a = run_suite("gamma-model", {});
  auto b = run_suite("gamma-model", {});
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_TRUE(a[i].passed()) << a[i].name << ": " << a[i].detail;
    EXPECT_EQ(a[i].to_json(), b[i].to_json());
  }
}

}  // namespace
}  // namespace lambdak
