#pragma once

#include <cstddef>
#include <functional>

namespace rotset {

/// Logical core count, at least 1.
unsigned default_jobs();

/// Runs body(i) for i in [0, n) on up to `jobs` threads. Work is split into
/// contiguous chunks, so results written by index are independent of `jobs`.
/// The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body);

}  // namespace rotset
