#include "streamshare/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <utility>

#include "streamshare/error.hpp"

namespace streamshare {

MultiIssueClaimsProblem to_multi_issue(const StreamingProblem& problem) {
  return MultiIssueClaimsProblem(problem.artists(), problem.users(),
                                 problem.streams().cast<double>(), problem.revenue());
}

IssueWeightFunction prorata_weight_function() {
  return IssueWeightFunction("share-of-streams", [](std::span<const double> totals, double) {
    double sum = 0.0;
    for (double c : totals) sum += c;
    if (!(sum > 0.0)) throw Error(ErrorKind::validation, "issue totals sum to zero");
    std::vector<double> w(totals.size());
    for (std::size_t j = 0; j < totals.size(); ++j) w[j] = totals[j] / sum;
    return w;
  });
}

IssueWeightFunction usercentric_weight_function() {
  return IssueWeightFunction("uniform", [](std::span<const double> totals, double) {
    return std::vector<double>(totals.size(), 1.0 / static_cast<double>(totals.size()));
  });
}

namespace {

std::vector<std::int64_t> as_profile(std::span<const double> claims) {
  std::vector<std::int64_t> x(claims.size());
  for (std::size_t i = 0; i < claims.size(); ++i) {
    const double c = claims[i];
    if (!(c >= 0.0) || std::floor(c) != c || c > 9.0e15) {
      throw Error(ErrorKind::domain, "claim " + std::to_string(c) + " is not a stream count");
    }
    x[i] = static_cast<std::int64_t>(c);
  }
  return x;
}

std::string describe(std::span<const std::int64_t> x) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << ')';
  return os.str();
}

}  // namespace

IssueRules induced_claims_rules(ProbabilitySystem rho) {
  return IssueRules([rho = std::move(rho)](std::size_t user) {
    return ClaimsRule("induced:" + rho.id() + "@" + std::to_string(user + 1),
                      [rho, user](const ClaimsProblem& p) {
                        const auto x = as_profile(p.claims());
                        Allocation out{std::vector<double>(x.size(), 0.0)};
                        // Feasibility leaves E = 0 on an empty profile; rho is undefined there.
                        if (p.total_claims() == 0.0) return out;
                        const auto probs = rho(user, x);
                        for (std::size_t i = 0; i < x.size(); ++i) out.amounts[i] = probs[i] * p.endowment();
                        return out;
                      });
  });
}

ProbabilitySystem probability_system_from_rules(IssueRules phi) {
  return ProbabilitySystem("from-rules", [phi = std::move(phi)](std::size_t user,
                                                                StreamProfile y) {
    std::vector<double> claims(y.begin(), y.end());
    double total = 0.0;
    for (double c : claims) total += c;
    if (!(total >= 1.0)) {
      throw Error(ErrorKind::domain, "profile " + describe(y) + " has no streams");
    }
    const ClaimsRule rule = phi.for_issue(user);
    const Allocation a = rule(ClaimsProblem(std::move(claims), 1.0));
    const auto violation = [&](const std::string& what) {
      throw Error(ErrorKind::property_violation,
                  rule.id() + " violates " + what + " on (N, " + describe(y) + ", 1)");
    };
    if (a.size() != y.size()) violation("shape");
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (a[i] < 0.0) violation("non-negativity");
      if (y[i] == 0 && a[i] != 0.0) violation("dummy");
      sum += a[i];
    }
    if (!(std::abs(sum - 1.0) <= kDefaultTolerance)) violation("efficiency");
    return a.amounts;
  });
}

WeightSystem weight_system_from_first_stage(const ClaimsRule& psi, const StreamingProblem& problem) {
  const auto stats = stream_stats(problem);
  std::vector<double> totals(stats.user_totals.begin(), stats.user_totals.end());
  const Allocation shares = psi(ClaimsProblem(problem.users(), totals, problem.revenue()));
  if (shares.size() != totals.size()) {
    throw Error(ErrorKind::validation, psi.id() + " returned the wrong number of user shares");
  }
  std::vector<double> table(totals.size());
  for (std::size_t j = 0; j < totals.size(); ++j) {
    if (!(shares[j] > 0.0)) {
      throw Error(ErrorKind::positivity_violation,
                  psi.id() + " gives nothing to user " + problem.users()[j] + " with " +
                      std::to_string(stats.user_totals[j]) + " streams");
    }
    table[j] = shares[j] / totals[j];
  }
  return WeightSystem::user_weighted(std::move(table), "first-stage:" + psi.id());
}

IssueWeightFunction total_streams_weight_function(WeightSystem w) {
  if (!w.is_total_streams()) {
    throw Error(ErrorKind::invalid_weight, w.id() + " is not a total-streams weight system");
  }
  const std::string id = "total-streams:" + w.id();
  return IssueWeightFunction(id, [w = std::move(w)](std::span<const double> totals, double) {
    std::vector<double> mass(totals.size());
    double sum = 0.0;
    for (std::size_t j = 0; j < totals.size(); ++j) {
      const auto concentrated = as_profile(totals.subspan(j, 1));
      mass[j] = w(j, concentrated) * totals[j];
      sum += mass[j];
    }
    if (!(sum > 0.0)) throw Error(ErrorKind::validation, "issue totals sum to zero");
    for (double& m : mass) m /= sum;
    return mass;
  });
}

namespace {

std::vector<bool> coalition_mask(std::span<const std::size_t> coalition, std::size_t n) {
  std::vector<bool> in(n, false);
  for (std::size_t i : coalition) {
    if (i >= n) {
      throw Error(ErrorKind::invalid_reallocation, "coalition member " + std::to_string(i + 1) +
                                                       " is not an agent");
    }
    if (in[i]) {
      throw Error(ErrorKind::invalid_reallocation, "coalition lists agent " +
                                                       std::to_string(i + 1) + " twice");
    }
    in[i] = true;
  }
  return in;
}

template <typename Matrix>
void check_reallocation(const Matrix& before, const Matrix& after, const std::vector<bool>& in) {
  if (before.rows() != after.rows() || before.cols() != after.cols()) {
    throw Error(ErrorKind::invalid_reallocation, "problems differ in shape");
  }
  for (Eigen::Index j = 0; j < before.cols(); ++j) {
    double sum_before = 0.0;
    double sum_after = 0.0;
    for (Eigen::Index i = 0; i < before.rows(); ++i) {
      if (in[i]) {
        sum_before += static_cast<double>(before(i, j));
        sum_after += static_cast<double>(after(i, j));
      } else if (before(i, j) != after(i, j)) {
        throw Error(ErrorKind::invalid_reallocation,
                    "agent " + std::to_string(i + 1) + " outside the coalition changed claims");
      }
    }
    if (std::abs(sum_before - sum_after) > scaled_tolerance(sum_before)) {
      throw Error(ErrorKind::invalid_reallocation,
                  "coalition total on issue " + std::to_string(j + 1) + " changed");
    }
  }
}

ReallocationProbeResult coalition_sums(const Allocation& before, const Allocation& after,
                                       const std::vector<bool>& in, double tolerance) {
  ReallocationProbeResult r;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (!in[i]) continue;
    r.coalition_before += before[i];
    r.coalition_after += after[i];
  }
  r.passed = std::abs(r.coalition_before - r.coalition_after) <= tolerance;
  return r;
}

}  // namespace

ReallocationProbeResult reallocation_proofness_probe(const MultiIssueRule& rule,
                                                     const MultiIssueClaimsProblem& original,
                                                     const MultiIssueClaimsProblem& reallocated,
                                                     std::span<const std::size_t> coalition,
                                                     double tolerance) {
  if (std::abs(original.endowment() - reallocated.endowment()) >
      scaled_tolerance(original.endowment())) {
    throw Error(ErrorKind::invalid_reallocation, "problems differ in endowment");
  }
  const auto in = coalition_mask(coalition, original.agent_count());
  check_reallocation(original.claims(), reallocated.claims(), in);
  return coalition_sums(rule(original), rule(reallocated), in, tolerance);
}

ReallocationProbeResult reallocation_proofness_probe(const StreamingRewards& rewards,
                                                     const StreamingProblem& original,
                                                     const StreamingProblem& reallocated,
                                                     std::span<const std::size_t> coalition,
                                                     double tolerance) {
  if (original.price_per_user() != reallocated.price_per_user()) {
    throw Error(ErrorKind::invalid_reallocation, "problems differ in price per user");
  }
  const auto in = coalition_mask(coalition, original.artist_count());
  check_reallocation(original.streams(), reallocated.streams(), in);
  return coalition_sums(rewards(original), rewards(reallocated), in, tolerance);
}

std::vector<double> seeded_positive_weights(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.1, 2.0);
  std::vector<double> w(count);
  for (double& v : w) v = dist(rng);
  return w;
}

ProbabilitySystem seeded_tabulated_probabilities(std::uint64_t seed, std::size_t users,
                                                 std::size_t artists) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.1, 1.0);
  Eigen::MatrixXd affinity(static_cast<Eigen::Index>(users), static_cast<Eigen::Index>(artists));
  for (Eigen::Index j = 0; j < affinity.rows(); ++j) {
    for (Eigen::Index i = 0; i < affinity.cols(); ++i) affinity(j, i) = dist(rng);
  }
  return ProbabilitySystem::tabulated("tabulated#" + std::to_string(seed), std::move(affinity));
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

WeightSystem seeded_total_streams_weights(std::uint64_t seed) {
  return WeightSystem::total_streams(
      "hashed#" + std::to_string(seed), [seed](std::size_t user, std::int64_t total) {
        const std::uint64_t h =
            splitmix64(splitmix64(seed ^ splitmix64(user)) ^ static_cast<std::uint64_t>(total));
        const double unit = static_cast<double>(h >> 11) * 0x1.0p-53;
        return 0.25 + 3.75 * unit;
      });
}

std::size_t EquivalenceReport::passed_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed; }));
}

std::size_t EquivalenceReport::failed_count() const noexcept {
  return checks.size() - passed_count();
}

namespace {

std::string describe(const StreamingProblem& p) {
  std::ostringstream os;
  os << p.artist_count() << 'x' << p.user_count() << " t=[";
  const auto& t = p.streams();
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (Eigen::Index j = 0; j < t.cols(); ++j) os << (j ? "," : "") << t(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

class Recorder {
 public:
  Recorder(EquivalenceReport& report, std::string instance)
      : report_(report), instance_(std::move(instance)) {}

  // Evaluation errors count as failures with infinite deviation.
  template <typename Fn>
  void check(std::string name, Fn&& deviation) {
    double d = std::numeric_limits<double>::infinity();
    try {
      d = deviation();
    } catch (const Error&) {
    }
    if (std::isnan(d)) d = std::numeric_limits<double>::infinity();
    report_.checks.push_back(CheckRecord{std::move(name), instance_, d, d <= report_.tolerance});
  }

  template <typename Fn>
  void check(std::string name, std::string instance, Fn&& deviation) {
    std::swap(instance, instance_);
    check(std::move(name), std::forward<Fn>(deviation));
    std::swap(instance, instance_);
  }

 private:
  EquivalenceReport& report_;
  std::string instance_;
};

double shapley_counterexample_deviation() {
  const StreamMatrix before = (StreamMatrix(3, 1) << 20, 0, 10).finished();
  const StreamMatrix after = (StreamMatrix(3, 1) << 10, 10, 10).finished();
  const std::vector<std::size_t> coalition{0, 1};
  const auto probe = reallocation_proofness_probe(StreamingRewards(&shapley_rewards),
                                                  StreamingProblem(before),
                                                  StreamingProblem(after), coalition);
  if (probe.passed) return std::numeric_limits<double>::infinity();
  return std::max(std::abs(probe.coalition_before - 0.5),
                  std::abs(probe.coalition_after - 2.0 / 3.0));
}

// Merges the first two artists' streams into the first one.
StreamingProblem merge_first_pair(const StreamingProblem& p) {
  StreamMatrix t = p.streams();
  t.row(0) += t.row(1);
  t.row(1).setZero();
  return StreamingProblem(p.artists(), p.users(), std::move(t), p.price_per_user());
}

double profile_deviation(const StreamingProblem& p, const ProbabilitySystem& a,
                         const ProbabilitySystem& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < p.user_count(); ++j) {
    worst = std::max(worst, max_deviation(a(j, p.profile(j)), b(j, p.profile(j))));
  }
  return worst;
}

}  // namespace

EquivalenceReport verify_equivalences(const StreamingProblem& problem, const VerifyOptions& options) {
  const StreamingProblem p = problem.with_price(1.0);
  EquivalenceReport report;
  report.instance = describe(p);
  report.tolerance = options.tolerance;
  Recorder rec(report, report.instance);

  const auto bridged = to_multi_issue(p);
  const auto prorata = pro_rata_rewards(p);
  const auto usercentric = user_centric_rewards(p);
  const auto shapley = shapley_rewards(p);
  const auto prop = proportional_rule();
  const auto cea_r = cea_rule();
  const auto two = [&](const ClaimsRule& first, const IssueRules& second) {
    return two_stage(bridged, first, second).total;
  };

  rec.check("prorata=weighted-proportional[share-of-streams]", [&] {
    return max_deviation(prorata, multi_issue_weighted_proportional(bridged, prorata_weight_function()));
  });
  rec.check("usercentric=weighted-proportional[uniform]", [&] {
    return max_deviation(usercentric,
                         multi_issue_weighted_proportional(bridged, usercentric_weight_function()));
  });
  rec.check("shapley-reallocation-counterexample", "t=(20,0,10) t'=(10,10,10) S={1,2}",
            shapley_counterexample_deviation);
  if (p.artist_count() >= 2) {
    const auto merged = to_multi_issue(merge_first_pair(p));
    const std::vector<std::size_t> coalition{0, 1};
    for (const auto& w : {prorata_weight_function(), usercentric_weight_function()}) {
      rec.check("weighted-proportional-reallocation[" + w.id() + "]", [&] {
        const auto r = reallocation_proofness_probe(
            [&w](const MultiIssueClaimsProblem& q) { return multi_issue_weighted_proportional(q, w); },
            bridged, merged, coalition, options.tolerance);
        return std::abs(r.coalition_before - r.coalition_after);
      });
    }
  }
  rec.check("prorata=two-stage[prop,prop]",
            [&] { return max_deviation(prorata, two(prop, IssueRules::uniform(prop))); });
  rec.check("usercentric=two-stage[cea,prop]",
            [&] { return max_deviation(usercentric, two(cea_r, IssueRules::uniform(prop))); });
  rec.check("shapley=two-stage[cea,cea]",
            [&] { return max_deviation(shapley, two(cea_r, IssueRules::uniform(cea_r))); });
  rec.check("cea-first-stage-unit-share", [&] {
    const auto first = two_stage(bridged, cea_r, IssueRules::uniform(prop)).first_stage;
    return max_deviation(first.amounts, std::vector<double>(p.user_count(), 1.0));
  });

  // Probabilistic indices against two-stage rules with a CEA first stage.
  std::vector<ProbabilitySystem> rhos{ProbabilitySystem::proportional(),
                                      ProbabilitySystem::uniform_on_support(),
                                      ProbabilitySystem::max_concentrated()};
  for (std::size_t s = 0; s < options.tabulated_systems; ++s) {
    rhos.push_back(seeded_tabulated_probabilities(options.seed * 1000003ULL + s, p.user_count(),
                                                  p.artist_count()));
  }
  for (const auto& rho : rhos) {
    rec.check("probabilistic=two-stage[cea,induced:" + rho.id() + "]", [&] {
      return max_deviation(probabilistic_index_rewards(p, rho), two(cea_r, induced_claims_rules(rho)));
    });
    rec.check("probability-roundtrip[" + rho.id() + "]", [&] {
      return profile_deviation(p, rho, probability_system_from_rules(induced_claims_rules(rho)));
    });
  }
  for (const auto& phi : {prop, cea_r}) {
    rec.check("two-stage[cea," + phi.id() + "]=probabilistic[from-rules]", [&] {
      const auto rules = IssueRules::uniform(phi);
      return max_deviation(two(cea_r, rules),
                           probabilistic_index_rewards(p, probability_system_from_rules(rules)));
    });
  }

  // User-weighted indices against two-stage rules with a proportional second stage.
  const auto user_weights = seeded_positive_weights(options.seed, p.user_count());
  rec.check("user-weighted=two-stage[wprop,prop]", [&] {
    return max_deviation(weighted_index_rewards(p, WeightSystem::user_weighted(user_weights)),
                         two(weighted_proportional_rule(user_weights), IssueRules::uniform(prop)));
  });
  for (const auto& psi : {prop, cea_r, weighted_proportional_rule(user_weights)}) {
    rec.check("two-stage[" + psi.id() + ",prop]=user-weighted[from-first-stage]", [&] {
      return max_deviation(two(psi, IssueRules::uniform(prop)),
                           weighted_index_rewards(p, weight_system_from_first_stage(psi, p)));
    });
  }

  // Total-streams weighted indices against multi-issue weighted proportional rules.
  const std::vector<WeightSystem> totals_systems{
      WeightSystem::total_streams("unit", [](std::size_t, std::int64_t) { return 1.0; }),
      WeightSystem::total_streams("inverse-total",
                                  [](std::size_t, std::int64_t s) { return 1.0 / static_cast<double>(s); }),
      seeded_total_streams_weights(options.seed)};
  for (const auto& w : totals_systems) {
    rec.check("total-streams[" + w.id() + "]=weighted-proportional", [&] {
      return max_deviation(weighted_index_rewards(p, w),
                           multi_issue_weighted_proportional(bridged, total_streams_weight_function(w)));
    });
  }
  return report;
}

}  // namespace streamshare
