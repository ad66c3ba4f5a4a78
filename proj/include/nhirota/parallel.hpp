#pragma once

#include <cstddef>
#include <functional>

namespace nh {

/// Worker count: NH_THREADS if set and positive, otherwise hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads, static block partition.
/// The first exception thrown by any worker is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace nh
