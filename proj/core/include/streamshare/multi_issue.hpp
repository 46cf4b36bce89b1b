#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "streamshare/claims.hpp"

namespace streamshare {

/// Claims indexed (agent, issue).
using ClaimsMatrix = Eigen::MatrixXd;

/// Agents holding claims on several issues, sharing one endowment.
/// The sum over all entries must cover the endowment.
class MultiIssueClaimsProblem {
 public:
  MultiIssueClaimsProblem(ClaimsMatrix claims, double endowment);
  MultiIssueClaimsProblem(std::vector<std::string> agents, std::vector<std::string> issues,
                          ClaimsMatrix claims, double endowment);

  const std::vector<std::string>& agents() const noexcept { return agents_; }
  const std::vector<std::string>& issues() const noexcept { return issues_; }
  const ClaimsMatrix& claims() const noexcept { return claims_; }
  double endowment() const noexcept { return endowment_; }
  std::size_t agent_count() const noexcept { return agents_.size(); }
  std::size_t issue_count() const noexcept { return issues_.size(); }

  /// Claims of every agent on `issue`, in agent order.
  std::vector<double> issue_claims(std::size_t issue) const;

 private:
  std::vector<std::string> agents_;
  std::vector<std::string> issues_;
  ClaimsMatrix claims_;
  double endowment_;
};

/// Column sums C^j, summed in agent order.
std::vector<double> issue_totals(const MultiIssueClaimsProblem& problem);

/// Maps (issue totals, endowment) to a probability distribution over issues.
/// It never sees the individual claims, so any rule built from it is blind to
/// how an issue's total is split among agents.
class IssueWeightFunction {
 public:
  using Evaluate = std::function<std::vector<double>(std::span<const double> totals, double endowment)>;

  IssueWeightFunction(std::string id, Evaluate evaluate);

  const std::string& id() const noexcept { return id_; }

  /// Evaluates and checks the result is a distribution (entries in [0,1],
  /// sum 1 within 1e-9); throws invalid_weight_function otherwise.
  std::vector<double> operator()(std::span<const double> totals, double endowment) const;

 private:
  std::string id_;
  Evaluate evaluate_;
};

/// P^w_i = sum_j (c_ij / C^j) * w_j(C, E) * E. Every issue total must be positive.
Allocation multi_issue_weighted_proportional(const MultiIssueClaimsProblem& problem,
                                             const IssueWeightFunction& w);

/// Second-stage rules, one per issue.
class IssueRules {
 public:
  using Select = std::function<ClaimsRule(std::size_t issue)>;

  explicit IssueRules(Select select);

  static IssueRules uniform(ClaimsRule rule);
  static IssueRules from_list(std::vector<ClaimsRule> rules);

  ClaimsRule for_issue(std::size_t issue) const { return select_(issue); }

 private:
  Select select_;
};

struct TwoStageBreakdown {
  Allocation first_stage;      // per issue
  ClaimsMatrix second_stage;   // per (agent, issue)
  Allocation total;            // per agent, row sums of second_stage
  std::vector<std::optional<double>> second_stage_levels;  // rule level per issue, if the rule has one
};

/// Splits E among issues with `first` on (K, C, E), then each issue's share
/// among agents with `second.for_issue(j)` on (N, c_.j, share_j).
/// Throws stage_feasibility when a share exceeds its issue total.
TwoStageBreakdown two_stage(const MultiIssueClaimsProblem& problem, const ClaimsRule& first,
                            const IssueRules& second);

}  // namespace streamshare
