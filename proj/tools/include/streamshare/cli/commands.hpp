#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "streamshare/cli/report.hpp"
#include "streamshare/streaming.hpp"

namespace streamshare::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInputError = 2;

struct GenerationSpec {
  std::size_t artists = 4;
  std::size_t users = 4;
  std::int64_t max_streams = 20;
};

struct RunConfig {
  std::optional<std::filesystem::path> input;
  std::optional<GenerationSpec> generation;
  std::string method = "pro-rata";
  double price_per_user = 1.0;
  Format format = Format::table;
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 0;
  std::size_t trials = 1;  // generated instances use seeds seed, seed+1, ...
  std::optional<std::filesystem::path> output;

  /// Throws validation unless exactly one of input / generation is set.
  void validate() const;
};

struct Method {
  enum class Kind { pro_rata, user_centric, shapley, two_stage, weighted };

  Kind kind = Kind::pro_rata;
  std::string first;   // two-stage first-stage rule: "prop" or "cea"
  std::string second;  // two-stage second-stage rule
  std::filesystem::path weights_file;
};

/// Accepts pro-rata, user-centric, shapley, two-stage:<a>,<b> with a, b in
/// {prop, cea}, and weighted:<file>. Throws unknown_method otherwise.
Method parse_method(std::string_view text);

AllocationReport allocate(const StreamingProblem& problem, std::string_view method);

/// Each command maps library errors to kExitInputError and prints them to `err`.
int cmd_allocate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_gen(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace streamshare::cli
