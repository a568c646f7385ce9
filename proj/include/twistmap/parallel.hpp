#pragma once

#include <cstddef>
#include <functional>

namespace twistmap {

/// Worker count used by the enumerations; 0 means hardware concurrency.
void set_thread_count(int threads);
int thread_count();

/// Runs body(i) for i in [0, count) on the worker pool. Callers write results
/// into per-index slots, so the outcome does not depend on scheduling. The
/// first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace twistmap
