#include "streamshare/cli/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_map>
#include <utility>

#include "streamshare/error.hpp"

namespace streamshare::cli {

namespace {

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.emplace_back(line.substr(start));
      return cells;
    }
    cells.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

// Lines with the trailing CR and a leading UTF-8 BOM removed; a final empty
// line (file ending in a newline) is dropped.
std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  if (!lines.empty() && lines.front().starts_with("\xEF\xBB\xBF")) lines.front().erase(0, 3);
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

[[noreturn]] void parse_error(const std::string& source, std::size_t row, std::size_t col,
                              const std::string& what) {
  throw Error(ErrorKind::parse, source + ": row " + std::to_string(row) + ", column " +
                                    std::to_string(col) + ": " + what);
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse, "cannot open " + path.string());
  return in;
}

}  // namespace

StreamingProblem parse_streams_csv(const std::filesystem::path& path, double price_per_user) {
  auto in = open(path);
  return parse_streams_csv(in, path.string(), price_per_user);
}

StreamingProblem parse_streams_csv(std::istream& in, const std::string& source,
                                   double price_per_user) {
  const auto lines = read_lines(in);
  if (lines.empty()) throw Error(ErrorKind::parse, source + ": empty file");
  const auto header = split(lines.front());
  if (header.front() != "artist") parse_error(source, 1, 1, "expected header cell 'artist'");
  if (header.size() < 2) parse_error(source, 1, 2, "no user columns");
  std::vector<std::string> users(header.begin() + 1, header.end());
  for (std::size_t j = 0; j < users.size(); ++j) {
    if (users[j].empty()) parse_error(source, 1, j + 2, "empty user id");
  }
  if (lines.size() < 2) throw Error(ErrorKind::parse, source + ": no artist rows");

  const auto n = static_cast<Eigen::Index>(lines.size() - 1);
  const auto m = static_cast<Eigen::Index>(users.size());
  StreamMatrix streams(n, m);
  std::vector<std::string> artists;
  artists.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t row = static_cast<std::size_t>(i) + 2;
    auto cells = split(lines[static_cast<std::size_t>(i) + 1]);
    if (cells.size() != users.size() + 1) {
      parse_error(source, row, std::min(cells.size(), users.size() + 1) + 1,
                  "expected " + std::to_string(users.size() + 1) + " cells, found " +
                      std::to_string(cells.size()));
    }
    if (cells.front().empty()) parse_error(source, row, 1, "empty artist id");
    artists.push_back(std::move(cells.front()));
    for (Eigen::Index j = 0; j < m; ++j) {
      const std::string& cell = cells[static_cast<std::size_t>(j) + 1];
      std::int64_t value = 0;
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (cell.empty() || ec != std::errc() || ptr != last || value < 0) {
        parse_error(source, row, static_cast<std::size_t>(j) + 2,
                    "'" + cell + "' is not a nonnegative integer");
      }
      streams(i, j) = value;
    }
  }
  return StreamingProblem(std::move(artists), std::move(users), std::move(streams), price_per_user);
}

void write_streams_csv(const StreamingProblem& problem, std::ostream& out) {
  out << "artist";
  for (const auto& u : problem.users()) out << ',' << u;
  out << '\n';
  const auto& t = problem.streams();
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    out << problem.artists()[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < t.cols(); ++j) out << ',' << t(i, j);
    out << '\n';
  }
}

std::vector<double> parse_user_weights(const std::filesystem::path& path,
                                       const StreamingProblem& problem) {
  auto in = open(path);
  return parse_user_weights(in, problem, path.string());
}

std::vector<double> parse_user_weights(std::istream& in, const StreamingProblem& problem,
                                       const std::string& source) {
  const auto lines = read_lines(in);
  if (lines.empty()) throw Error(ErrorKind::parse, source + ": empty file");
  const auto header = split(lines.front());
  if (header.size() != 2 || header[0] != "user" || header[1] != "weight") {
    parse_error(source, 1, 1, "expected header 'user,weight'");
  }
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t j = 0; j < problem.user_count(); ++j) position.emplace(problem.users()[j], j);

  std::vector<double> weights(problem.user_count(), 0.0);
  std::vector<bool> seen(problem.user_count(), false);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split(lines[r]);
    if (cells.size() != 2) parse_error(source, r + 1, 1, "expected 'user,weight'");
    const auto it = position.find(cells[0]);
    if (it == position.end()) parse_error(source, r + 1, 1, "unknown user '" + cells[0] + "'");
    if (seen[it->second]) parse_error(source, r + 1, 1, "user '" + cells[0] + "' listed twice");
    double w = 0.0;
    const char* last = cells[1].data() + cells[1].size();
    const auto [ptr, ec] = std::from_chars(cells[1].data(), last, w);
    if (cells[1].empty() || ec != std::errc() || ptr != last) {
      parse_error(source, r + 1, 2, "'" + cells[1] + "' is not a number");
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::invalid_weight,
                  source + ": user '" + cells[0] + "' has non-positive weight " + cells[1]);
    }
    weights[it->second] = w;
    seen[it->second] = true;
  }
  for (std::size_t j = 0; j < seen.size(); ++j) {
    if (!seen[j]) {
      throw Error(ErrorKind::validation, source + ": no weight for user '" + problem.users()[j] + "'");
    }
  }
  return weights;
}

}  // namespace streamshare::cli
