#include "streamshare/claims.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "streamshare/error.hpp"

namespace streamshare {

double scaled_tolerance(double scale, double relative) noexcept {
  return relative * std::max(1.0, std::abs(scale));
}

std::vector<std::string> default_ids(std::size_t n) {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i + 1));
  return ids;
}

ClaimsProblem::ClaimsProblem(std::vector<double> claims, double endowment)
    : ClaimsProblem(default_ids(claims.size()), claims, endowment) {}

ClaimsProblem::ClaimsProblem(std::vector<std::string> agents, std::vector<double> claims,
                             double endowment)
    : agents_(std::move(agents)), claims_(std::move(claims)), endowment_(endowment) {
  if (claims_.empty()) throw Error(ErrorKind::validation, "claims problem needs at least one agent");
  if (agents_.size() != claims_.size()) {
    throw Error(ErrorKind::validation, "claims problem has " + std::to_string(agents_.size()) +
                                           " agents but " + std::to_string(claims_.size()) +
                                           " claims");
  }
  if (!std::isfinite(endowment_) || endowment_ < 0.0) {
    throw Error(ErrorKind::validation, "endowment must be finite and nonnegative");
  }
  for (std::size_t i = 0; i < claims_.size(); ++i) {
    if (!std::isfinite(claims_[i]) || claims_[i] < 0.0) {
      throw Error(ErrorKind::validation,
                  "claim of agent " + agents_[i] + " must be finite and nonnegative");
    }
  }
  if (total_claims() + scaled_tolerance(endowment_) < endowment_) {
    throw Error(ErrorKind::validation, "claims total " + std::to_string(total_claims()) +
                                           " is below the endowment " +
                                           std::to_string(endowment_));
  }
}

double ClaimsProblem::total_claims() const noexcept {
  double sum = 0.0;
  for (double c : claims_) sum += c;
  return sum;
}

double Allocation::total() const noexcept {
  double sum = 0.0;
  for (double x : amounts) sum += x;
  return sum;
}

double max_deviation(std::span<const double> a, std::span<const double> b) noexcept {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    if (std::isnan(d)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, d);
  }
  return worst;
}

double max_deviation(const Allocation& a, const Allocation& b) noexcept {
  return max_deviation(std::span<const double>(a.amounts), std::span<const double>(b.amounts));
}

ClaimsRule::ClaimsRule(std::string id, Evaluate evaluate, Level level)
    : id_(std::move(id)), evaluate_(std::move(evaluate)), level_(std::move(level)) {}

std::optional<double> ClaimsRule::level(const ClaimsProblem& problem) const {
  if (!level_) return std::nullopt;
  return level_(problem);
}

Allocation proportional(const ClaimsProblem& problem) {
  const auto& claims = problem.claims();
  const double total = problem.total_claims();
  Allocation out{std::vector<double>(claims.size(), 0.0)};
  // Feasibility forces E = 0 when every claim is zero.
  if (total <= 0.0) return out;
  for (std::size_t i = 0; i < claims.size(); ++i) {
    out.amounts[i] = claims[i] / total * problem.endowment();
  }
  return out;
}

Allocation weighted_proportional(const ClaimsProblem& problem, std::span<const double> weights) {
  const auto& claims = problem.claims();
  if (weights.size() != claims.size()) {
    throw Error(ErrorKind::validation, "weights must align with agents");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < claims.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw Error(ErrorKind::validation,
                  "weight of agent " + problem.agents()[i] + " must be positive");
    }
    total += weights[i] * claims[i];
  }
  Allocation out{std::vector<double>(claims.size(), 0.0)};
  if (total <= 0.0) {
    if (problem.endowment() > 0.0) {
      throw Error(ErrorKind::undefined_division,
                  "weighted claims sum to zero with a positive endowment");
    }
    return out;
  }
  for (std::size_t i = 0; i < claims.size(); ++i) {
    out.amounts[i] = weights[i] * claims[i] / total * problem.endowment();
  }
  return out;
}

double cea_lambda(std::span<const double> claims, double endowment) {
  if (claims.empty()) throw Error(ErrorKind::validation, "no claims");
  if (!(endowment >= 0.0)) throw Error(ErrorKind::validation, "negative endowment");
  std::vector<double> sorted(claims.begin(), claims.end());
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (double c : sorted) {
    if (!(c >= 0.0)) throw Error(ErrorKind::validation, "negative claim");
    total += c;
  }
  if (total + scaled_tolerance(endowment) < endowment) {
    throw Error(ErrorKind::validation, "claims total is below the endowment");
  }

  double remaining = endowment;
  const std::size_t n = sorted.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double share = remaining / static_cast<double>(n - k);
    if (share <= sorted[k]) return share;
    remaining -= sorted[k];
  }
  // Endowment covers every claim (up to rounding): any cap >= max claim works.
  return sorted.back();
}

Allocation cea(const ClaimsProblem& problem) {
  const double lambda = cea_lambda(problem.claims(), problem.endowment());
  Allocation out;
  out.amounts.reserve(problem.size());
  for (double c : problem.claims()) out.amounts.push_back(std::min(lambda, c));
  return out;
}

ClaimsRule proportional_rule() {
  return ClaimsRule("prop", &proportional, [](const ClaimsProblem& p) {
    const double total = p.total_claims();
    return total > 0.0 ? p.endowment() / total : 0.0;
  });
}

ClaimsRule cea_rule() {
  return ClaimsRule("cea", &cea, [](const ClaimsProblem& p) {
    return cea_lambda(p.claims(), p.endowment());
  });
}

ClaimsRule weighted_proportional_rule(std::vector<double> weights) {
  return ClaimsRule("wprop", [w = std::move(weights)](const ClaimsProblem& p) {
    return weighted_proportional(p, w);
  });
}

namespace {

void record(PropertyCheck& check, const ClaimsProblem& instance, std::size_t agent, double award) {
  if (!check.passed) return;
  check.passed = false;
  check.witness = PropertyWitness{instance, agent, award};
}

}  // namespace

RulePropertyReport probe_rule_properties(const ClaimsRule& rule,
                                         std::span<const ClaimsProblem> instances,
                                         double tolerance) {
  RulePropertyReport report;
  for (const auto& instance : instances) {
    const Allocation awards = rule(instance);
    const auto& claims = instance.claims();
    for (std::size_t i = 0; i < claims.size(); ++i) {
      const double x = i < awards.size() ? awards[i] : std::numeric_limits<double>::quiet_NaN();
      if (!(x >= -tolerance)) record(report.nonnegativity, instance, i, x);
      if (claims[i] == 0.0 && !(std::abs(x) <= tolerance)) record(report.dummy, instance, i, x);
      if (claims[i] > 0.0 && instance.endowment() > 0.0 && !(x > 0.0)) {
        record(report.positivity, instance, i, x);
      }
      if (!(x <= claims[i] + scaled_tolerance(claims[i], tolerance))) {
        record(report.claim_boundedness, instance, i, x);
      }
    }
  }
  return report;
}

}  // namespace streamshare
