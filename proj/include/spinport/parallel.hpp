#pragma once

#include <functional>

namespace spinport {

/// Number of worker threads: SPINPORT_THREADS if set and > 0, otherwise the
/// hardware concurrency. A value of 0 in the environment also means "auto".
int thread_count();

/// Runs fn(i) for i in [0, n). Each index must be independent of the others;
/// results should be written to preallocated per-index slots so the outcome
/// does not depend on scheduling order.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace spinport
