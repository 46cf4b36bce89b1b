#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's allocation code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "streamshare/error.hpp"
#include "streamshare/streaming.hpp"

namespace streamshare::testing {

/// Root of f(l) = sum_i min(l, c_i) - E on [0, max c] by bisection.
inline double bisection_cea_lambda(const std::vector<double>& claims, double endowment,
                                   double tol = 1e-12) {
  double lo = 0.0;
  double hi = *std::max_element(claims.begin(), claims.end());
  const auto f = [&](double l) {
    double s = 0.0;
    for (double c : claims) s += std::min(l, c);
    return s - endowment;
  };
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Per-user payment split by an explicit share function, summed per artist.
template <typename Share>
std::vector<double> per_user_split(const StreamMatrix& t, Share share) {
  std::vector<double> out(static_cast<std::size_t>(t.rows()), 0.0);
  for (Eigen::Index j = 0; j < t.cols(); ++j) {
    for (Eigen::Index i = 0; i < t.rows(); ++i) out[i] += share(t.col(j), i);
  }
  return out;
}

inline StreamMatrix random_streams(std::mt19937_64& rng, int max_n, int max_m, int max_entry) {
  std::uniform_int_distribution<int> nd(1, max_n);
  std::uniform_int_distribution<int> md(1, max_m);
  std::uniform_int_distribution<std::int64_t> ed(0, max_entry);
  StreamMatrix t(nd(rng), md(rng));
  for (Eigen::Index j = 0; j < t.cols(); ++j) {
    do {
      for (Eigen::Index i = 0; i < t.rows(); ++i) t(i, j) = ed(rng);
    } while (t.col(j).sum() == 0);
  }
  return t;
}

inline std::vector<double> random_claims(std::mt19937_64& rng, int max_n, int max_claim) {
  std::uniform_int_distribution<int> nd(1, max_n);
  std::uniform_int_distribution<int> cd(0, max_claim);
  std::vector<double> c(static_cast<std::size_t>(nd(rng)));
  for (double& v : c) v = cd(rng);
  return c;
}

}  // namespace streamshare::testing

#define EXPECT_ERROR_KIND(statement, expected_kind)                               \
  do {                                                                            \
    try {                                                                         \
      statement;                                                                  \
      ADD_FAILURE() << "expected " << ::streamshare::to_string(expected_kind);    \
    } catch (const ::streamshare::Error& e) {                                     \
      EXPECT_EQ(e.kind(), expected_kind) << e.what();                             \
    }                                                                             \
  } while (false)
