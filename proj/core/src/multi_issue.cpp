#include "streamshare/multi_issue.hpp"

#include <cmath>
#include <utility>

#include "streamshare/error.hpp"

namespace streamshare {

MultiIssueClaimsProblem::MultiIssueClaimsProblem(ClaimsMatrix claims, double endowment)
    : MultiIssueClaimsProblem(default_ids(static_cast<std::size_t>(claims.rows())),
                              default_ids(static_cast<std::size_t>(claims.cols())),
                              claims, endowment) {}

MultiIssueClaimsProblem::MultiIssueClaimsProblem(std::vector<std::string> agents,
                                                 std::vector<std::string> issues,
                                                 ClaimsMatrix claims, double endowment)
    : agents_(std::move(agents)),
      issues_(std::move(issues)),
      claims_(std::move(claims)),
      endowment_(endowment) {
  if (agents_.empty() || issues_.empty()) {
    throw Error(ErrorKind::validation, "multi-issue problem needs at least one agent and one issue");
  }
  if (static_cast<std::size_t>(claims_.rows()) != agents_.size() ||
      static_cast<std::size_t>(claims_.cols()) != issues_.size()) {
    throw Error(ErrorKind::validation, "claims matrix dimensions do not match agents x issues");
  }
  if (!std::isfinite(endowment_) || endowment_ < 0.0) {
    throw Error(ErrorKind::validation, "endowment must be finite and nonnegative");
  }
  double total = 0.0;
  for (Eigen::Index j = 0; j < claims_.cols(); ++j) {
    for (Eigen::Index i = 0; i < claims_.rows(); ++i) {
      const double c = claims_(i, j);
      if (!std::isfinite(c) || c < 0.0) {
        throw Error(ErrorKind::validation, "claim of agent " + agents_[i] + " on issue " +
                                               issues_[j] + " must be finite and nonnegative");
      }
      total += c;
    }
  }
  if (total + scaled_tolerance(endowment_) < endowment_) {
    throw Error(ErrorKind::validation, "claims total is below the endowment");
  }
}

std::vector<double> MultiIssueClaimsProblem::issue_claims(std::size_t issue) const {
  const auto j = static_cast<Eigen::Index>(issue);
  std::vector<double> column(agents_.size());
  for (Eigen::Index i = 0; i < claims_.rows(); ++i) column[i] = claims_(i, j);
  return column;
}

std::vector<double> issue_totals(const MultiIssueClaimsProblem& problem) {
  const auto& c = problem.claims();
  std::vector<double> totals(problem.issue_count(), 0.0);
  for (Eigen::Index j = 0; j < c.cols(); ++j) {
    for (Eigen::Index i = 0; i < c.rows(); ++i) totals[j] += c(i, j);
  }
  return totals;
}

IssueWeightFunction::IssueWeightFunction(std::string id, Evaluate evaluate)
    : id_(std::move(id)), evaluate_(std::move(evaluate)) {}

std::vector<double> IssueWeightFunction::operator()(std::span<const double> totals,
                                                    double endowment) const {
  auto weights = evaluate_(totals, endowment);
  if (weights.size() != totals.size()) {
    throw Error(ErrorKind::invalid_weight_function,
                id_ + " returned " + std::to_string(weights.size()) + " weights for " +
                    std::to_string(totals.size()) + " issues");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const double w = weights[j];
    if (!(w >= -kDefaultTolerance && w <= 1.0 + kDefaultTolerance)) {
      throw Error(ErrorKind::invalid_weight_function,
                  id_ + " weight " + std::to_string(w) + " for issue " + std::to_string(j + 1) +
                      " is outside [0,1]");
    }
    sum += w;
  }
  if (!(std::abs(sum - 1.0) <= kDefaultTolerance)) {
    throw Error(ErrorKind::invalid_weight_function,
                id_ + " weights sum to " + std::to_string(sum) + ", not 1");
  }
  return weights;
}

Allocation multi_issue_weighted_proportional(const MultiIssueClaimsProblem& problem,
                                             const IssueWeightFunction& w) {
  const auto totals = issue_totals(problem);
  for (std::size_t j = 0; j < totals.size(); ++j) {
    if (!(totals[j] > 0.0)) {
      throw Error(ErrorKind::zero_issue_total, "issue " + problem.issues()[j] + " has no claims");
    }
  }
  const double endowment = problem.endowment();
  const auto weights = w(totals, endowment);
  const auto& c = problem.claims();

  Allocation out{std::vector<double>(problem.agent_count(), 0.0)};
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      sum += c(i, j) / totals[j] * weights[j] * endowment;
    }
    out.amounts[i] = sum;
  }
  return out;
}

IssueRules::IssueRules(Select select) : select_(std::move(select)) {}

IssueRules IssueRules::uniform(ClaimsRule rule) {
  return IssueRules([rule = std::move(rule)](std::size_t) { return rule; });
}

IssueRules IssueRules::from_list(std::vector<ClaimsRule> rules) {
  return IssueRules([rules = std::move(rules)](std::size_t issue) {
    if (issue >= rules.size()) {
      throw Error(ErrorKind::validation, "no second-stage rule for issue " + std::to_string(issue + 1));
    }
    return rules[issue];
  });
}

TwoStageBreakdown two_stage(const MultiIssueClaimsProblem& problem, const ClaimsRule& first,
                            const IssueRules& second) {
  const auto totals = issue_totals(problem);
  const ClaimsProblem among_issues(problem.issues(), totals, problem.endowment());

  TwoStageBreakdown out;
  out.first_stage = first(among_issues);
  if (out.first_stage.size() != problem.issue_count()) {
    throw Error(ErrorKind::validation, "first-stage rule " + first.id() + " returned " +
                                           std::to_string(out.first_stage.size()) +
                                           " awards for " +
                                           std::to_string(problem.issue_count()) + " issues");
  }

  const auto n = static_cast<Eigen::Index>(problem.agent_count());
  const auto k = static_cast<Eigen::Index>(problem.issue_count());
  out.second_stage = ClaimsMatrix::Zero(n, k);
  out.second_stage_levels.resize(problem.issue_count());

  for (Eigen::Index j = 0; j < k; ++j) {
    const double share = out.first_stage[j];
    if (share > totals[j] + scaled_tolerance(totals[j])) {
      throw Error(ErrorKind::stage_feasibility,
                  "issue " + problem.issues()[j] + " receives " + std::to_string(share) +
                      " but its claims total " + std::to_string(totals[j]));
    }
    const ClaimsProblem within_issue(problem.agents(), problem.issue_claims(j), share);
    const ClaimsRule rule = second.for_issue(static_cast<std::size_t>(j));
    const Allocation awards = rule(within_issue);
    if (awards.size() != problem.agent_count()) {
      throw Error(ErrorKind::validation, "second-stage rule " + rule.id() +
                                             " returned the wrong number of awards on issue " +
                                             problem.issues()[j]);
    }
    for (Eigen::Index i = 0; i < n; ++i) out.second_stage(i, j) = awards[i];
    out.second_stage_levels[j] = rule.level(within_issue);
  }

  out.total.amounts.assign(problem.agent_count(), 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) sum += out.second_stage(i, j);
    out.total.amounts[i] = sum;
  }
  return out;
}

}  // namespace streamshare
