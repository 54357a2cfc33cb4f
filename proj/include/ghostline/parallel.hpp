#pragma once

#include <cstddef>
#include <functional>

namespace ghostline {

// GHOSTLINE_WORKERS when set to a positive integer, else the hardware thread count.
unsigned worker_count();

// Calls body(i) for every i in [0, n) on up to `workers` threads (0 = worker_count()).
// Indices are handed out in order; the exception of the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned workers = 0);

}  // namespace ghostline
