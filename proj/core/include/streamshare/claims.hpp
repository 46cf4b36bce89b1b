#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace streamshare {

/// Relative tolerance used for efficiency and feasibility comparisons.
inline constexpr double kDefaultTolerance = 1e-9;

/// Absolute slack for comparisons against an amount of size `scale`.
double scaled_tolerance(double scale, double relative = kDefaultTolerance) noexcept;

/// Agent identifiers "1".."n".
std::vector<std::string> default_ids(std::size_t n);

/// An endowment to be split among agents holding claims that together cover it.
///
/// Validated on construction: one claim per agent, claims and endowment
/// nonnegative and finite, and sum(claims) >= endowment up to
/// scaled_tolerance(endowment). The slack admits second-stage problems whose
/// endowment was itself produced by floating-point arithmetic.
class ClaimsProblem {
 public:
  ClaimsProblem(std::vector<double> claims, double endowment);
  ClaimsProblem(std::vector<std::string> agents, std::vector<double> claims, double endowment);

  const std::vector<std::string>& agents() const noexcept { return agents_; }
  const std::vector<double>& claims() const noexcept { return claims_; }
  double endowment() const noexcept { return endowment_; }
  std::size_t size() const noexcept { return claims_.size(); }
  double total_claims() const noexcept;

 private:
  std::vector<std::string> agents_;
  std::vector<double> claims_;
  double endowment_;
};

/// Per-agent awards, aligned with the agent list of the problem that produced them.
struct Allocation {
  std::vector<double> amounts;

  std::size_t size() const noexcept { return amounts.size(); }
  double operator[](std::size_t i) const { return amounts[i]; }
  double total() const noexcept;
};

/// Largest componentwise |a_i - b_i|; infinity when the sizes differ.
double max_deviation(std::span<const double> a, std::span<const double> b) noexcept;
double max_deviation(const Allocation& a, const Allocation& b) noexcept;

/// A named claims rule. `level`, when present, reports the rule's scalar
/// parameter on a problem (the CEA cap, or the proportionality factor), which
/// two-stage breakdowns expose next to the awards.
class ClaimsRule {
 public:
  using Evaluate = std::function<Allocation(const ClaimsProblem&)>;
  using Level = std::function<double(const ClaimsProblem&)>;

  ClaimsRule(std::string id, Evaluate evaluate, Level level = {});

  const std::string& id() const noexcept { return id_; }
  Allocation operator()(const ClaimsProblem& problem) const { return evaluate_(problem); }
  std::optional<double> level(const ClaimsProblem& problem) const;

 private:
  std::string id_;
  Evaluate evaluate_;
  Level level_;
};

Allocation proportional(const ClaimsProblem& problem);

/// Awards proportional to w_i * c_i. Weights must be strictly positive and
/// aligned with the agents.
Allocation weighted_proportional(const ClaimsProblem& problem, std::span<const double> weights);

/// Constrained equal awards: min(lambda, c_i) with lambda from cea_lambda.
Allocation cea(const ClaimsProblem& problem);

/// Solves sum_i min(lambda, c_i) = endowment by sorted water-filling.
/// When the endowment equals the claim total the largest claim is returned.
double cea_lambda(std::span<const double> claims, double endowment);

ClaimsRule proportional_rule();
ClaimsRule cea_rule();
ClaimsRule weighted_proportional_rule(std::vector<double> weights);

struct PropertyWitness {
  ClaimsProblem instance;
  std::size_t agent;
  double award;
};

struct PropertyCheck {
  bool passed = true;
  std::optional<PropertyWitness> witness;  // first failing (instance, agent)
};

struct RulePropertyReport {
  PropertyCheck nonnegativity;
  PropertyCheck dummy;
  PropertyCheck positivity;
  PropertyCheck claim_boundedness;
};

/// Evaluates `rule` on every instance and records the first counterexample to
/// each property. A pass only covers the supplied instances. Positivity is
/// checked only on instances with a positive endowment. Awards within
/// `tolerance` of zero count as zero for the dummy check.
RulePropertyReport probe_rule_properties(const ClaimsRule& rule,
                                         std::span<const ClaimsProblem> instances,
                                         double tolerance = 1e-12);

}  // namespace streamshare
