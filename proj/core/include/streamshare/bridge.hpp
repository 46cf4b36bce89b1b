#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "streamshare/claims.hpp"
#include "streamshare/multi_issue.hpp"
#include "streamshare/streaming.hpp"

namespace streamshare {

/// Artists become agents, users become issues, streams become claims and the
/// revenue (users * price) becomes the endowment.
MultiIssueClaimsProblem to_multi_issue(const StreamingProblem& problem);

/// w_j = C^j / sum(C). With it, the multi-issue weighted proportional rule
/// reproduces pro-rata rewards on bridged problems.
IssueWeightFunction prorata_weight_function();

/// w_j = 1/|K|. Reproduces user-centric rewards on bridged problems.
IssueWeightFunction usercentric_weight_function();

/// For each user j, the claims rule (N, c, E) -> rho(j, c) * E. Claims must be
/// nonnegative integers (rho's domain), otherwise a domain error is thrown.
IssueRules induced_claims_rules(ProbabilitySystem rho);

/// rho_i(j, y) = phi^j(N, y, 1). Each evaluation checks the rule output is
/// nonnegative, zero on zero claims and sums to one; violations raise
/// property_violation naming the rule and the profile.
ProbabilitySystem probability_system_from_rules(IssueRules phi);

/// w_j = psi_j(M, (T^j), revenue) / T^j, tabulated for this problem's users.
/// The table is tied to the problem it was built from. Throws
/// positivity_violation if psi leaves a user with streams at zero.
WeightSystem weight_system_from_first_stage(const ClaimsRule& psi, const StreamingProblem& problem);

/// Issue weights w_j = w*(j, C^j) C^j / sum_k w*(k, C^k) C^k, where w*(j, s)
/// evaluates `w` on the degenerate profile holding all s streams on one
/// artist. Only total-streams systems are accepted.
IssueWeightFunction total_streams_weight_function(WeightSystem w);

struct ReallocationProbeResult {
  double coalition_before = 0.0;
  double coalition_after = 0.0;
  bool passed = false;
};

using MultiIssueRule = std::function<Allocation(const MultiIssueClaimsProblem&)>;
using StreamingRewards = std::function<RewardVector(const StreamingProblem&)>;

/// Compares the coalition's total award before and after its members
/// redistribute claims among themselves. Both problems must share shape and
/// endowment, agree outside the coalition and keep each issue's coalition
/// total; otherwise invalid_reallocation is thrown. Coalition indices are
/// zero-based.
ReallocationProbeResult reallocation_proofness_probe(const MultiIssueRule& rule,
                                                     const MultiIssueClaimsProblem& original,
                                                     const MultiIssueClaimsProblem& reallocated,
                                                     std::span<const std::size_t> coalition,
                                                     double tolerance = kDefaultTolerance);

ReallocationProbeResult reallocation_proofness_probe(const StreamingRewards& rewards,
                                                     const StreamingProblem& original,
                                                     const StreamingProblem& reallocated,
                                                     std::span<const std::size_t> coalition,
                                                     double tolerance = kDefaultTolerance);

// Seeded generators shared by verify_equivalences and the test suites.

/// Strictly positive weights in [0.1, 2).
std::vector<double> seeded_positive_weights(std::uint64_t seed, std::size_t count);

/// Tabulated probability system with affinities in [0.1, 1).
ProbabilitySystem seeded_tabulated_probabilities(std::uint64_t seed, std::size_t users,
                                                 std::size_t artists);

/// Total-streams system whose w*(j, s) is a hash of (seed, j, s) mapped into [0.25, 4).
WeightSystem seeded_total_streams_weights(std::uint64_t seed);

struct CheckRecord {
  std::string name;
  std::string instance;
  double deviation = 0.0;
  bool passed = false;
};

struct EquivalenceReport {
  std::string instance;
  double tolerance = kDefaultTolerance;
  std::vector<CheckRecord> checks;

  std::size_t passed_count() const noexcept;
  std::size_t failed_count() const noexcept;
  bool all_passed() const noexcept { return failed_count() == 0; }
};

struct VerifyOptions {
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 0;
  std::size_t tabulated_systems = 3;
};

/// Checks every streaming-index / claims-rule identity on one problem and
/// records each comparison as a max-norm deviation. Families of systems are
/// sampled from a fixed generator set plus seeded tables, so a pass is
/// evidence rather than proof. Checks run at price 1: the identities that go
/// through a first-stage CEA rely on every user receiving exactly one unit.
EquivalenceReport verify_equivalences(const StreamingProblem& problem,
                                      const VerifyOptions& options = {});

}  // namespace streamshare
