#include "streamshare/streaming.hpp"

#include <random>

#include <gtest/gtest.h>

#include "support/oracles.hpp"

namespace streamshare {
namespace {

StreamMatrix streams(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  StreamMatrix m(static_cast<Eigen::Index>(rows.size()),
                 static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (auto v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

StreamingProblem three_by_two() { return StreamingProblem(streams({{10, 0}, {20, 0}, {0, 70}})); }
StreamingProblem two_by_three() { return StreamingProblem(streams({{1, 1, 1}, {1, 1, 95}})); }

void expect_near(const std::vector<double>& got, const std::vector<double>& want, double tol = 1e-12) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "artist " << i;
}

TEST(StreamingProblem, Validation) {
  try {
    StreamingProblem({"a", "b"}, {"u1", "u2"}, streams({{1, 0}, {2, 0}}));
    FAIL() << "expected a validation error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::validation);
    EXPECT_NE(std::string(e.what()).find("u2"), std::string::npos);
  }
  EXPECT_ERROR_KIND(StreamingProblem(streams({{-1, 2}})), ErrorKind::validation);
  EXPECT_ERROR_KIND(StreamingProblem(streams({{1}}), 0.0), ErrorKind::validation);
  EXPECT_ERROR_KIND(StreamingProblem({"a", "a"}, {"u"}, streams({{1}, {1}})), ErrorKind::validation);
}

TEST(StreamStats, Examples) {
  const auto s = stream_stats(three_by_two());
  EXPECT_EQ(s.artist_totals, (std::vector<std::int64_t>{10, 20, 70}));
  EXPECT_EQ(s.user_totals, (std::vector<std::int64_t>{30, 70}));
  EXPECT_EQ(s.listings[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(s.listings[1], (std::vector<std::size_t>{2}));
  EXPECT_EQ(s.fans[2], (std::vector<std::size_t>{1}));

  const auto one = stream_stats(StreamingProblem(streams({{5}})));
  EXPECT_EQ(one.artist_totals, (std::vector<std::int64_t>{5}));
  EXPECT_EQ(one.listings[0], (std::vector<std::size_t>{0}));

  const auto s2 = stream_stats(two_by_three());
  EXPECT_EQ(s2.artist_totals, (std::vector<std::int64_t>{3, 97}));
  EXPECT_EQ(s2.user_totals, (std::vector<std::int64_t>{2, 2, 96}));
}

TEST(StreamStats, ListingsAndFansAreDual) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const StreamingProblem p(testing::random_streams(rng, 8, 8, 3));
    const auto s = stream_stats(p);
    std::int64_t a = 0, u = 0;
    for (auto v : s.artist_totals) a += v;
    for (auto v : s.user_totals) u += v;
    EXPECT_EQ(a, u);
    for (std::size_t j = 0; j < s.listings.size(); ++j) {
      EXPECT_GE(s.listings[j].size(), 1u);
      for (std::size_t i : s.listings[j]) {
        EXPECT_NE(std::find(s.fans[i].begin(), s.fans[i].end(), j), s.fans[i].end());
      }
    }
  }
}

TEST(RewardsFromIndex, Examples) {
  const auto p = three_by_two();
  expect_near(rewards_from_index(p, std::vector<double>{10, 20, 70}).amounts, {0.2, 0.4, 1.4});
  const StreamingProblem two(streams({{1, 1}, {1, 1}}));
  expect_near(rewards_from_index(two, std::vector<double>{1, 1}).amounts, {1, 1});
  expect_near(rewards_from_index(two.with_price(2.0), std::vector<double>{3, 1}).amounts, {3, 1});
  EXPECT_ERROR_KIND(rewards_from_index(two, std::vector<double>{0, 0}), ErrorKind::zero_index);
}

TEST(ProRata, Examples) {
  expect_near(pro_rata_rewards(three_by_two()).amounts, {0.2, 0.4, 1.4});
  expect_near(pro_rata_rewards(StreamingProblem(streams({{9}}), 3.5)).amounts, {3.5});
  // (3/100)*3 and (97/100)*3
  expect_near(pro_rata_rewards(two_by_three()).amounts, {0.09, 2.91});
}

TEST(UserCentric, Examples) {
  expect_near(user_centric_rewards(three_by_two()).amounts, {1.0 / 3, 2.0 / 3, 1.0});
  expect_near(user_centric_rewards(StreamingProblem(streams({{10}, {30}}))).amounts, {0.25, 0.75});
  expect_near(user_centric_rewards(two_by_three()).amounts, {0.5 + 0.5 + 1.0 / 96, 0.5 + 0.5 + 95.0 / 96});
}

TEST(Shapley, Examples) {
  expect_near(shapley_rewards(three_by_two()).amounts, {0.5, 0.5, 1.0});
  expect_near(shapley_rewards(StreamingProblem(streams({{10}, {30}}))).amounts, {0.5, 0.5});
  expect_near(shapley_rewards(StreamingProblem(streams({{20}, {0}, {10}}))).amounts, {0.5, 0, 0.5});
}

TEST(WeightedIndex, Examples) {
  const auto p = three_by_two();
  const auto unit = WeightSystem::general("unit", [](std::size_t, StreamProfile) { return 1.0; });
  const auto inverse = WeightSystem::general("inverse", [](std::size_t, StreamProfile x) {
    std::int64_t s = 0;
    for (auto v : x) s += v;
    return 1.0 / static_cast<double>(s);
  });
  const auto twice = WeightSystem::general("two", [](std::size_t, StreamProfile) { return 2.0; });
  expect_near(weighted_index_rewards(p, unit).amounts, {0.2, 0.4, 1.4});
  expect_near(weighted_index_rewards(p, inverse).amounts, {1.0 / 3, 2.0 / 3, 1.0});
  expect_near(weighted_index_rewards(p, twice).amounts, weighted_index_rewards(p, unit).amounts);

  const auto zero = WeightSystem::general("zero", [](std::size_t, StreamProfile) { return 0.0; });
  EXPECT_ERROR_KIND(weighted_index_rewards(p, zero), ErrorKind::invalid_weight);
  EXPECT_ERROR_KIND(weighted_index_rewards(p, WeightSystem::user_weighted({1.0})), ErrorKind::invalid_weight);
}

TEST(WeightSystem, RestrictedForms) {
  const auto table = WeightSystem::user_weighted({2.0, 3.0});
  EXPECT_TRUE(table.is_user_weighted());
  EXPECT_TRUE(table.is_total_streams());
  EXPECT_DOUBLE_EQ(table.by_total(1, 99), 3.0);
  const auto totals = WeightSystem::total_streams("sqrt", [](std::size_t, std::int64_t s) {
    return std::sqrt(static_cast<double>(s));
  });
  EXPECT_FALSE(totals.is_user_weighted());
  EXPECT_TRUE(totals.is_total_streams());
  const std::vector<std::int64_t> x{3, 1};
  EXPECT_DOUBLE_EQ(totals(0, x), 2.0);
  const auto general = WeightSystem::general("g", [](std::size_t, StreamProfile) { return 1.0; });
  EXPECT_FALSE(general.is_total_streams());
  EXPECT_ERROR_KIND(general.by_total(0, 1), ErrorKind::invalid_weight);
}

TEST(ProbabilisticIndex, Examples) {
  const auto p = three_by_two();
  expect_near(probabilistic_index_rewards(p, ProbabilitySystem::proportional()).amounts,
              {1.0 / 3, 2.0 / 3, 1.0});
  expect_near(probabilistic_index_rewards(p, ProbabilitySystem::uniform_on_support()).amounts,
              {0.5, 0.5, 1.0});
  // By construction the most-streamed artist (first on ties) takes the whole unit.
  const StreamingProblem tie(streams({{0}, {7}, {7}}));
  expect_near(probabilistic_index_rewards(tie, ProbabilitySystem::max_concentrated()).amounts, {0, 1, 0});
}

TEST(ProbabilisticIndex, InvalidSystemsNameTheUser) {
  const auto p = three_by_two();
  const ProbabilitySystem leaky("leaky", [](std::size_t, StreamProfile x) {
    return std::vector<double>(x.size(), 1.0 / static_cast<double>(x.size()));
  });
  try {
    probabilistic_index_rewards(p, leaky);
    FAIL() << "expected invalid_probability_system";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_probability_system);
    EXPECT_NE(std::string(e.what()).find("user 1"), std::string::npos);
  }
  const ProbabilitySystem short_mass("short", [](std::size_t, StreamProfile x) {
    std::vector<double> v(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] > 0) {
        v[i] = 0.5;
        break;
      }
    }
    return v;
  });
  EXPECT_ERROR_KIND(probabilistic_index_rewards(p, short_mass), ErrorKind::invalid_probability_system);
}

TEST(ProbabilisticIndex, TabulatedSystemRenormalizesOnSupport) {
  Eigen::MatrixXd affinity(1, 3);
  affinity << 1.0, 5.0, 3.0;
  const auto rho = ProbabilitySystem::tabulated("t", affinity);
  const std::vector<std::int64_t> x{4, 0, 2};
  const auto probs = rho(0, x);
  EXPECT_NEAR(probs[0], 0.25, 1e-15);
  EXPECT_EQ(probs[1], 0.0);
  EXPECT_NEAR(probs[2], 0.75, 1e-15);
  EXPECT_ERROR_KIND(rho(1, x), ErrorKind::domain);
}

TEST(Streaming, PriceScalesEveryIndex) {
  const auto p = two_by_three();
  const auto q = p.with_price(2.5);
  for (auto f : {&pro_rata_rewards, &user_centric_rewards, &shapley_rewards}) {
    const auto a = f(p);
    const auto b = f(q);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(b[i], 2.5 * a[i], 1e-12);
    EXPECT_NEAR(b.total(), q.revenue(), 1e-12);
  }
}

// Oracles: each user's unit payment split explicitly, then summed per artist.
TEST(Streaming, IndicesMatchPerUserSplitOracle) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const StreamMatrix t = testing::random_streams(rng, 8, 8, 20);
    const StreamingProblem p(t);
    const auto uc = testing::per_user_split(t, [](const auto& col, Eigen::Index i) {
      return static_cast<double>(col(i)) / static_cast<double>(col.sum());
    });
    const auto sh = testing::per_user_split(t, [](const auto& col, Eigen::Index i) {
      const auto support = (col.array() > 0).count();
      return col(i) > 0 ? 1.0 / static_cast<double>(support) : 0.0;
    });
    EXPECT_LE(max_deviation(user_centric_rewards(p).amounts, uc), 1e-12);
    EXPECT_LE(max_deviation(shapley_rewards(p).amounts, sh), 1e-12);
  }
}

}  // namespace
}  // namespace streamshare
