#pragma once

#include <cstdint>
#include <functional>

namespace strichartz {

/// Worker cap: STRICHARTZ_LAB_THREADS if set and positive, otherwise the
/// hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Iterations
/// must be independent. The first exception thrown by any worker is rethrown.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

}  // namespace strichartz
