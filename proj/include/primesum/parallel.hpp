#pragma once

#include <cstddef>
#include <functional>

namespace primesum {

// Worker count: hardware concurrency, capped by PRIMESUM_THREADS when set.
unsigned thread_cap();

// Runs body(i) for i in [0, count). Each index is handled by exactly one
// worker; callers write results into per-index slots so the outcome does not
// depend on scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace primesum
