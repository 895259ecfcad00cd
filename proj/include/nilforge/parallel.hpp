#pragma once

#include <cstddef>
#include <functional>

namespace nilforge {

/// Worker count: NILFORGE_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t thread_count();

/// Runs fn(i) for i in [0, n). Results must be written to per-index slots,
/// so output does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace nilforge
