#pragma once

#include <cstddef>
#include <functional>

namespace clockless {

// Worker count from CLOCKLESS_THREADS, else the hardware concurrency.
int worker_count();
// Runs fn(i) for i in [0, count); results must be written by index.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace clockless
