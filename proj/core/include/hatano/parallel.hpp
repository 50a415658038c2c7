#pragma once

#include <cstddef>
#include <functional>

namespace hatano {

/// Worker count: hardware concurrency, capped by the HATANO_THREADS
/// environment variable when it is set to a positive integer.
unsigned worker_count();

/// Calls body(i) for every i in [0, count). Iterations are distributed over
/// worker_count() threads; callers write results into slot i so the merged
/// output does not depend on scheduling. The first exception thrown by any
/// iteration is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hatano
