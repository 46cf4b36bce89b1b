#include "streamshare/streaming.hpp"

#include <cmath>
#include <unordered_set>
#include <utility>

#include "streamshare/error.hpp"

namespace streamshare {

namespace {

void require_unique(const std::vector<std::string>& ids, const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) {
      throw Error(ErrorKind::validation, std::string("duplicate ") + what + " id '" + id + "'");
    }
  }
}

}  // namespace

StreamingProblem::StreamingProblem(StreamMatrix streams, double price_per_user)
    : StreamingProblem(default_ids(static_cast<std::size_t>(streams.rows())),
                       default_ids(static_cast<std::size_t>(streams.cols())), streams,
                       price_per_user) {}

StreamingProblem::StreamingProblem(std::vector<std::string> artists, std::vector<std::string> users,
                                   StreamMatrix streams, double price_per_user)
    : artists_(std::move(artists)),
      users_(std::move(users)),
      streams_(std::move(streams)),
      price_(price_per_user) {
  if (artists_.empty() || users_.empty()) {
    throw Error(ErrorKind::validation, "streaming problem needs at least one artist and one user");
  }
  if (static_cast<std::size_t>(streams_.rows()) != artists_.size() ||
      static_cast<std::size_t>(streams_.cols()) != users_.size()) {
    throw Error(ErrorKind::validation, "stream matrix dimensions do not match artists x users");
  }
  if (!std::isfinite(price_) || !(price_ > 0.0)) {
    throw Error(ErrorKind::validation, "price per user must be positive");
  }
  require_unique(artists_, "artist");
  require_unique(users_, "user");
  for (Eigen::Index j = 0; j < streams_.cols(); ++j) {
    std::int64_t total = 0;
    for (Eigen::Index i = 0; i < streams_.rows(); ++i) {
      if (streams_(i, j) < 0) {
        throw Error(ErrorKind::validation, "negative stream count for artist " + artists_[i] +
                                               " and user " + users_[j]);
      }
      total += streams_(i, j);
    }
    if (total <= 0) {
      throw Error(ErrorKind::validation, "user " + users_[j] + " has no streams");
    }
  }
}

StreamProfile StreamingProblem::profile(std::size_t user) const {
  const auto j = static_cast<Eigen::Index>(user);
  return StreamProfile(streams_.col(j).data(), static_cast<std::size_t>(streams_.rows()));
}

StreamingProblem StreamingProblem::with_price(double price_per_user) const {
  return StreamingProblem(artists_, users_, streams_, price_per_user);
}

StreamStats stream_stats(const StreamingProblem& problem) {
  const auto& t = problem.streams();
  StreamStats s;
  s.artist_totals.assign(problem.artist_count(), 0);
  s.user_totals.assign(problem.user_count(), 0);
  s.listings.resize(problem.user_count());
  s.fans.resize(problem.artist_count());
  for (Eigen::Index j = 0; j < t.cols(); ++j) {
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      const auto x = t(i, j);
      s.artist_totals[i] += x;
      s.user_totals[j] += x;
      if (x > 0) {
        s.listings[j].push_back(static_cast<std::size_t>(i));
        s.fans[i].push_back(static_cast<std::size_t>(j));
      }
    }
  }
  return s;
}

WeightSystem WeightSystem::general(std::string id, Evaluate evaluate) {
  WeightSystem w;
  w.id_ = std::move(id);
  w.evaluate_ = std::move(evaluate);
  return w;
}

WeightSystem WeightSystem::user_weighted(std::vector<double> per_user, std::string id) {
  WeightSystem w;
  w.id_ = std::move(id);
  w.table_ = std::move(per_user);
  return w;
}

WeightSystem WeightSystem::total_streams(std::string id, EvaluateTotal evaluate) {
  WeightSystem w;
  w.id_ = std::move(id);
  w.by_total_ = std::move(evaluate);
  return w;
}

namespace {

double checked_weight(double w, std::size_t user, const std::string& id) {
  if (!std::isfinite(w) || !(w > 0.0)) {
    throw Error(ErrorKind::invalid_weight, id + " gives weight " + std::to_string(w) +
                                               " to user " + std::to_string(user + 1));
  }
  return w;
}

double table_weight(const std::vector<double>& table, std::size_t user) {
  if (user >= table.size()) {
    throw Error(ErrorKind::invalid_weight, "no tabulated weight for user " + std::to_string(user + 1));
  }
  return table[user];
}

}  // namespace

double WeightSystem::operator()(std::size_t user, StreamProfile profile) const {
  if (table_) return checked_weight(table_weight(*table_, user), user, id_);
  if (by_total_) {
    std::int64_t total = 0;
    for (auto x : profile) total += x;
    return checked_weight(by_total_(user, total), user, id_);
  }
  return checked_weight(evaluate_(user, profile), user, id_);
}

double WeightSystem::by_total(std::size_t user, std::int64_t total) const {
  if (table_) return checked_weight(table_weight(*table_, user), user, id_);
  if (!by_total_) {
    throw Error(ErrorKind::invalid_weight, id_ + " is not a total-streams weight system");
  }
  return checked_weight(by_total_(user, total), user, id_);
}

ProbabilitySystem::ProbabilitySystem(std::string id, Evaluate evaluate)
    : id_(std::move(id)), evaluate_(std::move(evaluate)) {}

ProbabilitySystem ProbabilitySystem::proportional() {
  return ProbabilitySystem("proportional", [](std::size_t, StreamProfile x) {
    double total = 0.0;
    for (auto v : x) total += static_cast<double>(v);
    std::vector<double> p(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) p[i] = static_cast<double>(x[i]) / total;
    return p;
  });
}

ProbabilitySystem ProbabilitySystem::uniform_on_support() {
  return ProbabilitySystem("uniform-on-support", [](std::size_t, StreamProfile x) {
    std::size_t support = 0;
    for (auto v : x) support += v > 0 ? 1 : 0;
    std::vector<double> p(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] > 0) p[i] = 1.0 / static_cast<double>(support);
    }
    return p;
  });
}

ProbabilitySystem ProbabilitySystem::max_concentrated() {
  return ProbabilitySystem("max-concentrated", [](std::size_t, StreamProfile x) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < x.size(); ++i) {
      if (x[i] > x[best]) best = i;
    }
    std::vector<double> p(x.size(), 0.0);
    p[best] = 1.0;
    return p;
  });
}

ProbabilitySystem ProbabilitySystem::tabulated(std::string id, Eigen::MatrixXd affinity) {
  return ProbabilitySystem(std::move(id), [a = std::move(affinity)](std::size_t user,
                                                                    StreamProfile x) {
    const auto j = static_cast<Eigen::Index>(user);
    if (j >= a.rows() || static_cast<Eigen::Index>(x.size()) > a.cols()) {
      throw Error(ErrorKind::domain, "tabulated probability system does not cover user " +
                                         std::to_string(user + 1));
    }
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] > 0) total += a(j, static_cast<Eigen::Index>(i));
    }
    std::vector<double> p(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] > 0) p[i] = a(j, static_cast<Eigen::Index>(i)) / total;
    }
    return p;
  });
}

std::vector<double> ProbabilitySystem::operator()(std::size_t user, StreamProfile profile) const {
  auto p = evaluate_(user, profile);
  const auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::invalid_probability_system,
                id_ + " at user " + std::to_string(user + 1) + ": " + why);
  };
  if (p.size() != profile.size()) fail("output size does not match the profile");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= -kDefaultTolerance && p[i] <= 1.0 + kDefaultTolerance)) {
      fail("probability " + std::to_string(p[i]) + " outside [0,1]");
    }
    if (profile[i] == 0 && p[i] != 0.0) fail("mass on an artist the user never streamed");
    sum += p[i];
  }
  if (!(std::abs(sum - 1.0) <= kDefaultTolerance)) fail("probabilities sum to " + std::to_string(sum));
  return p;
}

RewardVector rewards_from_index(const StreamingProblem& problem, std::span<const double> index) {
  if (index.size() != problem.artist_count()) {
    throw Error(ErrorKind::validation, "index must have one entry per artist");
  }
  double total = 0.0;
  for (double v : index) {
    if (!std::isfinite(v) || v < 0.0) throw Error(ErrorKind::validation, "index entries must be nonnegative");
    total += v;
  }
  if (!(total > 0.0)) throw Error(ErrorKind::zero_index, "index sums to zero");
  RewardVector out{std::vector<double>(index.size(), 0.0)};
  const double revenue = problem.revenue();
  for (std::size_t i = 0; i < index.size(); ++i) out.amounts[i] = index[i] / total * revenue;
  return out;
}

RewardVector pro_rata_rewards(const StreamingProblem& problem) {
  const auto stats = stream_stats(problem);
  std::vector<double> index(stats.artist_totals.begin(), stats.artist_totals.end());
  return rewards_from_index(problem, index);
}

RewardVector user_centric_rewards(const StreamingProblem& problem) {
  const auto& t = problem.streams();
  const auto stats = stream_stats(problem);
  RewardVector out{std::vector<double>(problem.artist_count(), 0.0)};
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < t.cols(); ++j) {
      sum += static_cast<double>(t(i, j)) / static_cast<double>(stats.user_totals[j]);
    }
    out.amounts[i] = problem.price_per_user() * sum;
  }
  return out;
}

RewardVector shapley_rewards(const StreamingProblem& problem) {
  const auto stats = stream_stats(problem);
  RewardVector out{std::vector<double>(problem.artist_count(), 0.0)};
  for (std::size_t i = 0; i < stats.fans.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j : stats.fans[i]) sum += 1.0 / static_cast<double>(stats.listings[j].size());
    out.amounts[i] = problem.price_per_user() * sum;
  }
  return out;
}

std::vector<double> weighted_index(const StreamingProblem& problem, const WeightSystem& w) {
  const auto& t = problem.streams();
  std::vector<double> weights(problem.user_count());
  for (std::size_t j = 0; j < weights.size(); ++j) weights[j] = w(j, problem.profile(j));
  std::vector<double> index(problem.artist_count(), 0.0);
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < t.cols(); ++j) sum += weights[j] * static_cast<double>(t(i, j));
    index[i] = sum;
  }
  return index;
}

RewardVector weighted_index_rewards(const StreamingProblem& problem, const WeightSystem& w) {
  return rewards_from_index(problem, weighted_index(problem, w));
}

std::vector<double> probabilistic_index(const StreamingProblem& problem,
                                        const ProbabilitySystem& rho) {
  std::vector<double> index(problem.artist_count(), 0.0);
  for (std::size_t j = 0; j < problem.user_count(); ++j) {
    const auto p = rho(j, problem.profile(j));
    for (std::size_t i = 0; i < index.size(); ++i) index[i] += p[i];
  }
  return index;
}

RewardVector probabilistic_index_rewards(const StreamingProblem& problem,
                                         const ProbabilitySystem& rho) {
  auto index = probabilistic_index(problem, rho);
  for (double& v : index) v *= problem.price_per_user();
  return RewardVector{std::move(index)};
}

}  // namespace streamshare
