#pragma once

#include <functional>

namespace bcx {

// Worker count from BICOMPLEX_THREADS (0 or unset = hardware concurrency).
int thread_count();

// Runs f(0..n-1) on up to thread_count() threads. Results must be written
// to preallocated slots so the outcome does not depend on scheduling.
// The first exception thrown by any task is rethrown.
void parallel_for(int n, const std::function<void(int)>& f);

}  // namespace bcx
