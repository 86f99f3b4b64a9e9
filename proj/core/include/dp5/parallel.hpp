#pragma once

#include <cstddef>
#include <functional>

namespace dp5 {

// Worker count: DP5_JOBS if set and positive, else the hardware concurrency.
unsigned default_jobs();

// Runs fn(0..n-1) on up to `jobs` threads (0 = default_jobs()). Each index
// runs exactly once; callers write results into slot i so the outcome does
// not depend on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned jobs = 0);

}  // namespace dp5
