#pragma once

#include <functional>

namespace ganlab {

/// Number of worker threads: LAB_THREADS when set (>= 1), else the hardware
/// concurrency.
int worker_count();

/// Runs fn(i) for i in [0, count). Work items are distributed over workers
/// by index, and each item writes only its own output slot, so results do
/// not depend on the thread count. Exceptions propagate from the first
/// failing index.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace ganlab
