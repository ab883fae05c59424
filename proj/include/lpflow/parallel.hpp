#pragma once

#include <cstddef>
#include <functional>

namespace lpflow {

/// Worker count used by parallel_for; defaults to the hardware concurrency.
void set_worker_count(int n);
int worker_count();

/// Runs body(i) for i in [0, count). Indices are split into contiguous static
/// chunks, so every index is computed by exactly the same code path whatever
/// the worker count; callers write results into per-index slots and reduce
/// serially afterwards. Calls made from inside a worker run serially. The
/// exception of the lowest failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace lpflow
