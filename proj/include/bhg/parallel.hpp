#pragma once

#include <cstddef>
#include <functional>

namespace bhg {

/// Worker count from BHG_THREADS (default: hardware concurrency, at least 1).
std::size_t thread_count();

/// Runs fn(i) for i in [0, n) on up to thread_count() workers with a static
/// block partition.  Callers write results by index, so output never depends
/// on the worker count.  The first exception thrown by any task is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace bhg
