#pragma once

#include <cstddef>
#include <functional>

namespace lumifuse {

// Worker cap: LUMIFUSE_THREADS when set (minimum 1), else hardware threads.
unsigned worker_count();

// Runs fn(0..n-1) across workers. Callers write results by index, so output
// is independent of scheduling. Exceptions from fn propagate to the caller.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace lumifuse
