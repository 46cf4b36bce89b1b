#include "streamshare/cli/generate.hpp"

#include <random>
#include <string>
#include <vector>

#include "streamshare/error.hpp"

namespace streamshare::cli {

StreamingProblem generate_random_problem(std::uint64_t seed, std::size_t artists,
                                         std::size_t users, std::int64_t max_streams) {
  if (artists == 0 || users == 0 || max_streams < 1) {
    throw Error(ErrorKind::validation, "generation needs artists, users and max_streams >= 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> count(0, max_streams);
  const auto n = static_cast<Eigen::Index>(artists);
  const auto m = static_cast<Eigen::Index>(users);
  StreamMatrix t(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    std::int64_t total = 0;
    do {
      total = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        t(i, j) = count(rng);
        total += t(i, j);
      }
    } while (total == 0);
  }
  std::vector<std::string> artist_ids;
  std::vector<std::string> user_ids;
  for (std::size_t i = 0; i < artists; ++i) artist_ids.push_back("a" + std::to_string(i + 1));
  for (std::size_t j = 0; j < users; ++j) user_ids.push_back("u" + std::to_string(j + 1));
  return StreamingProblem(std::move(artist_ids), std::move(user_ids), std::move(t));
}

}  // namespace streamshare::cli
