#pragma once

#include <cstddef>
#include <cstdint>

#include "streamshare/streaming.hpp"

namespace streamshare::cli {

/// Entries uniform in [0, max_streams]; a user column that comes out empty is
/// redrawn until it has a stream. Artists are named a1.., users u1.. .
/// Deterministic for fixed arguments on a given standard library.
StreamingProblem generate_random_problem(std::uint64_t seed, std::size_t artists,
                                         std::size_t users, std::int64_t max_streams);

}  // namespace streamshare::cli
