#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "streamshare/claims.hpp"

namespace streamshare {

/// Play counts indexed (artist, user). Column-major, so a user's profile is contiguous.
using StreamMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// One user's streams over all artists.
using StreamProfile = std::span<const std::int64_t>;

/// Rewards per artist. Same shape as an allocation.
using RewardVector = Allocation;

/// Artists x users play counts. Each user pays `price_per_user`, so the
/// revenue to divide is users * price. Every user must have streamed
/// something; artists with no streams are allowed.
class StreamingProblem {
 public:
  explicit StreamingProblem(StreamMatrix streams, double price_per_user = 1.0);
  StreamingProblem(std::vector<std::string> artists, std::vector<std::string> users,
                   StreamMatrix streams, double price_per_user = 1.0);

  const std::vector<std::string>& artists() const noexcept { return artists_; }
  const std::vector<std::string>& users() const noexcept { return users_; }
  const StreamMatrix& streams() const noexcept { return streams_; }
  double price_per_user() const noexcept { return price_; }
  std::size_t artist_count() const noexcept { return artists_.size(); }
  std::size_t user_count() const noexcept { return users_.size(); }
  double revenue() const noexcept { return price_ * static_cast<double>(users_.size()); }

  StreamProfile profile(std::size_t user) const;
  StreamingProblem with_price(double price_per_user) const;

 private:
  std::vector<std::string> artists_;
  std::vector<std::string> users_;
  StreamMatrix streams_;
  double price_;
};

struct StreamStats {
  std::vector<std::int64_t> artist_totals;          // T_i
  std::vector<std::int64_t> user_totals;            // T^j
  std::vector<std::vector<std::size_t>> listings;   // L^j: artists user j streamed
  std::vector<std::vector<std::size_t>> fans;       // F_i: users who streamed artist i
};

StreamStats stream_stats(const StreamingProblem& problem);

/// Positive per-user weight applied to every stream of that user.
///
/// A general system may look at the whole profile. Two restricted forms are
/// tracked because the bridge constructions depend on them: user-weighted
/// (a fixed table, one weight per user index) and total-streams (weight
/// depends only on the user and the profile total).
class WeightSystem {
 public:
  using Evaluate = std::function<double(std::size_t user, StreamProfile profile)>;
  using EvaluateTotal = std::function<double(std::size_t user, std::int64_t total)>;

  static WeightSystem general(std::string id, Evaluate evaluate);
  static WeightSystem user_weighted(std::vector<double> per_user, std::string id = "user-weighted");
  static WeightSystem total_streams(std::string id, EvaluateTotal evaluate);

  const std::string& id() const noexcept { return id_; }
  bool is_user_weighted() const noexcept { return table_.has_value(); }
  bool is_total_streams() const noexcept { return static_cast<bool>(by_total_) || is_user_weighted(); }
  const std::optional<std::vector<double>>& table() const noexcept { return table_; }

  /// Throws invalid_weight unless the weight is finite and strictly positive.
  double operator()(std::size_t user, StreamProfile profile) const;

  /// w*(user, total); only for total-streams systems.
  double by_total(std::size_t user, std::int64_t total) const;

 private:
  WeightSystem() = default;

  std::string id_;
  Evaluate evaluate_;
  EvaluateTotal by_total_;
  std::optional<std::vector<double>> table_;
};

/// Per-user probability distribution over artists, supported on the artists
/// the user streamed.
class ProbabilitySystem {
 public:
  using Evaluate = std::function<std::vector<double>(std::size_t user, StreamProfile profile)>;

  ProbabilitySystem(std::string id, Evaluate evaluate);

  /// x_i / sum(x).
  static ProbabilitySystem proportional();
  /// 1/|support| on every streamed artist.
  static ProbabilitySystem uniform_on_support();
  /// All mass on the most-streamed artist; ties go to the lowest index.
  static ProbabilitySystem max_concentrated();
  /// affinity(user, i) normalized over the user's streamed artists. Rows
  /// index users, columns artists; entries must be positive.
  static ProbabilitySystem tabulated(std::string id, Eigen::MatrixXd affinity);

  const std::string& id() const noexcept { return id_; }

  /// Throws invalid_probability_system naming the user when the output is
  /// not a distribution over the profile's support (tolerance 1e-9).
  std::vector<double> operator()(std::size_t user, StreamProfile profile) const;

 private:
  std::string id_;
  Evaluate evaluate_;
};

/// R_i = I_i / sum(I) * revenue. Throws zero_index when the index sums to zero.
RewardVector rewards_from_index(const StreamingProblem& problem, std::span<const double> index);

RewardVector pro_rata_rewards(const StreamingProblem& problem);
RewardVector user_centric_rewards(const StreamingProblem& problem);
RewardVector shapley_rewards(const StreamingProblem& problem);

/// Index I_i = sum_j w(j, t_.j) * t_ij, normalized to revenue.
std::vector<double> weighted_index(const StreamingProblem& problem, const WeightSystem& w);
RewardVector weighted_index_rewards(const StreamingProblem& problem, const WeightSystem& w);

/// Index I_i = sum_j rho_i(j, t_.j); rewards are price * index.
std::vector<double> probabilistic_index(const StreamingProblem& problem, const ProbabilitySystem& rho);
RewardVector probabilistic_index_rewards(const StreamingProblem& problem, const ProbabilitySystem& rho);

}  // namespace streamshare
