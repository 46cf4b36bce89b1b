#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "streamshare/streaming.hpp"

namespace streamshare::cli {

/// Reads `artist,<user-id>,...` followed by one `<artist-id>,<count>,...` row
/// per artist. Counts must be nonnegative integers. Malformed cells raise a
/// parse error naming the row and column (1-based, header is row 1).
StreamingProblem parse_streams_csv(const std::filesystem::path& path, double price_per_user = 1.0);
StreamingProblem parse_streams_csv(std::istream& in, const std::string& source = "<stream>",
                                   double price_per_user = 1.0);

/// Inverse of parse_streams_csv; parsing the output reproduces the problem.
void write_streams_csv(const StreamingProblem& problem, std::ostream& out);

/// Reads a `user,weight` table and returns weights aligned with the
/// problem's users. Every user must appear exactly once with a positive weight.
std::vector<double> parse_user_weights(const std::filesystem::path& path,
                                       const StreamingProblem& problem);
std::vector<double> parse_user_weights(std::istream& in, const StreamingProblem& problem,
                                       const std::string& source = "<stream>");

}  // namespace streamshare::cli
