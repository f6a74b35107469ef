#pragma once

#include <cstddef>
#include <functional>

namespace lieval {

// Worker count: LIEVAL_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, n). Results must be written to per-index slots so
// the outcome does not depend on scheduling. The first exception thrown by any
// task is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lieval
