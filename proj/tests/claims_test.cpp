#include "streamshare/claims.hpp"

#include <random>

#include <gtest/gtest.h>

#include "support/oracles.hpp"

namespace streamshare {
namespace {

using ::streamshare::testing::bisection_cea_lambda;

void expect_awards(const Allocation& a, std::vector<double> expected, double tol = 1e-12) {
  ASSERT_EQ(a.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(a[i], expected[i], tol) << "agent " << i;
}

TEST(ClaimsProblem, RejectsInvalidInstances) {
  EXPECT_ERROR_KIND(ClaimsProblem({1.0, 2.0}, 4.0), ErrorKind::validation);
  EXPECT_ERROR_KIND(ClaimsProblem({-1.0, 2.0}, 0.5), ErrorKind::validation);
  EXPECT_ERROR_KIND(ClaimsProblem({1.0}, -0.1), ErrorKind::validation);
  EXPECT_ERROR_KIND(ClaimsProblem({}, 0.0), ErrorKind::validation);
  EXPECT_ERROR_KIND(ClaimsProblem({"a"}, {1.0, 2.0}, 1.0), ErrorKind::validation);
}

TEST(ClaimsProblem, DefaultIdsAreOneBased) {
  const ClaimsProblem p({3.0, 4.0}, 1.0);
  EXPECT_EQ(p.agents(), (std::vector<std::string>{"1", "2"}));
}

TEST(Proportional, Examples) {
  expect_awards(proportional(ClaimsProblem({10, 20, 70}, 2)), {0.2, 0.4, 1.4});
  expect_awards(proportional(ClaimsProblem({5}, 5)), {5});
  expect_awards(proportional(ClaimsProblem({0, 0}, 0)), {0, 0});
}

TEST(WeightedProportional, Examples) {
  const std::vector<double> ones{1, 1};
  const std::vector<double> twos{2, 2, 2};
  const std::vector<double> skew{1, 3};
  expect_awards(weighted_proportional(ClaimsProblem({1, 1}, 2), ones), {1, 1});
  expect_awards(weighted_proportional(ClaimsProblem({10, 20, 70}, 2), twos), {0.2, 0.4, 1.4});
  // 1*4/(1*4 + 3*4) * 4 = 1
  expect_awards(weighted_proportional(ClaimsProblem({4, 4}, 4), skew), {1, 3});
}

TEST(WeightedProportional, Errors) {
  const std::vector<double> bad{1, 0};
  EXPECT_ERROR_KIND(weighted_proportional(ClaimsProblem({1, 1}, 1), bad), ErrorKind::validation);
  const std::vector<double> ok{1, 2};
  EXPECT_ERROR_KIND(weighted_proportional(ClaimsProblem({0, 0}, 0), std::vector<double>{1}),
                    ErrorKind::validation);
  expect_awards(weighted_proportional(ClaimsProblem({0, 0}, 0), ok), {0, 0});
}

TEST(Cea, Examples) {
  expect_awards(cea(ClaimsProblem({1, 95}, 2.88)), {1, 1.88}, 1e-12);
  expect_awards(cea(ClaimsProblem({30, 70}, 2)), {1, 1});
  expect_awards(cea(ClaimsProblem({1, 2, 3}, 6)), {1, 2, 3});
}

TEST(CeaLambda, Examples) {
  EXPECT_NEAR(cea_lambda(std::vector<double>{1, 95}, 2.88), 1.88, 1e-12);
  EXPECT_DOUBLE_EQ(cea_lambda(std::vector<double>{4, 4, 4}, 6), 2.0);
  const std::vector<double> claims{1, 2, 10};
  const double oracle = bisection_cea_lambda(claims, 5.0);
  EXPECT_NEAR(oracle, 2.0, 1e-11);
  EXPECT_NEAR(cea_lambda(claims, 5.0), oracle, 1e-11);
}

TEST(CeaLambda, InfeasibleInputIsRejected) {
  EXPECT_ERROR_KIND(cea_lambda(std::vector<double>{1, 2}, 4), ErrorKind::validation);
}

TEST(CeaLambda, ZeroEndowmentAndZeroClaims) {
  EXPECT_EQ(cea_lambda(std::vector<double>{0, 5}, 0), 0.0);
  expect_awards(cea(ClaimsProblem({0, 5}, 3)), {0, 3});
}

TEST(CeaLambda, MatchesBisectionOnRandomInstances) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto claims = testing::random_claims(rng, 10, 100);
    double total = 0;
    for (double c : claims) total += c;
    if (total == 0) continue;
    const double e = std::uniform_real_distribution<double>(0.0, total)(rng);
    EXPECT_NEAR(cea_lambda(claims, e), bisection_cea_lambda(claims, e), 1e-9);
  }
}

TEST(Rules, CarryIdsAndLevels) {
  const ClaimsProblem p({1, 95}, 2.88);
  EXPECT_EQ(cea_rule().id(), "cea");
  EXPECT_NEAR(*cea_rule().level(p), 1.88, 1e-12);
  EXPECT_NEAR(*proportional_rule().level(p), 2.88 / 96, 1e-15);
  EXPECT_FALSE(weighted_proportional_rule({1, 1}).level(p).has_value());
}

TEST(ProbeRuleProperties, Examples) {
  const std::vector<ClaimsProblem> zero_claim{ClaimsProblem({0, 5}, 3)};
  const auto prop = probe_rule_properties(proportional_rule(), zero_claim);
  EXPECT_TRUE(prop.dummy.passed);
  const auto c = probe_rule_properties(cea_rule(), zero_claim);
  EXPECT_TRUE(c.nonnegativity.passed);
  EXPECT_TRUE(c.dummy.passed);

  const std::vector<ClaimsProblem> small{ClaimsProblem({1, 99}, 1)};
  EXPECT_TRUE(probe_rule_properties(proportional_rule(), small).positivity.passed);
  EXPECT_NEAR(proportional(small[0])[0], 0.01, 1e-15);
  EXPECT_NEAR(proportional(small[0])[1], 0.99, 1e-15);
}

TEST(ProbeRuleProperties, ReportsWitnesses) {
  // Equal split ignoring claims: breaks dummy, positivity holds, boundedness fails.
  const ClaimsRule equal_split("equal", [](const ClaimsProblem& p) {
    return Allocation{std::vector<double>(p.size(), p.endowment() / static_cast<double>(p.size()))};
  });
  const std::vector<ClaimsProblem> instances{ClaimsProblem({3, 3}, 2), ClaimsProblem({0, 4}, 2)};
  const auto r = probe_rule_properties(equal_split, instances);
  EXPECT_TRUE(r.nonnegativity.passed);
  EXPECT_TRUE(r.positivity.passed);
  ASSERT_FALSE(r.dummy.passed);
  EXPECT_EQ(r.dummy.witness->agent, 0u);
  EXPECT_EQ(r.dummy.witness->instance.claims(), (std::vector<double>{0, 4}));
  ASSERT_FALSE(r.claim_boundedness.passed);
  EXPECT_DOUBLE_EQ(r.claim_boundedness.witness->award, 1.0);

  const ClaimsRule negative("negative", [](const ClaimsProblem& p) {
    Allocation a{std::vector<double>(p.size(), 0.0)};
    a.amounts[0] = -1.0;
    a.amounts[1] = p.endowment() + 1.0;
    return a;
  });
  const auto n = probe_rule_properties(negative, instances);
  EXPECT_FALSE(n.nonnegativity.passed);
  EXPECT_FALSE(n.positivity.passed);
}

TEST(MaxDeviation, SizeMismatchIsInfinite) {
  EXPECT_TRUE(std::isinf(max_deviation(Allocation{{1, 2}}, Allocation{{1}})));
  EXPECT_DOUBLE_EQ(max_deviation(Allocation{{1, 2}}, Allocation{{1.5, 2}}), 0.5);
}

}  // namespace
}  // namespace streamshare
