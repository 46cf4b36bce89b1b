#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "streamshare/bridge.hpp"
#include "streamshare/multi_issue.hpp"

namespace streamshare::cli {

enum class Format { json, table, csv };

Format parse_format(std::string_view name);

/// Per-user attribution of a two-stage allocation.
struct BreakdownReport {
  std::vector<std::string> users;
  TwoStageBreakdown stages;
};

struct AllocationReport {
  std::string method;
  double price_per_user = 1.0;
  double revenue = 0.0;
  std::vector<std::string> artists;
  std::vector<double> rewards;
  std::optional<BreakdownReport> breakdown;

  double total() const noexcept;
};

/// json: full precision, fixed key order. table: 6 decimals, artists in input
/// order, with a totals line. csv: `artist,reward` rows only.
void emit_report(const AllocationReport& report, Format format, std::ostream& out);

/// json lists every check; table and csv summarize each instance and list failures.
void emit_verify_report(const std::vector<EquivalenceReport>& reports, Format format,
                        std::ostream& out);

}  // namespace streamshare::cli
