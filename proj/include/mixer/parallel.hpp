#pragma once

#include <cstdint>
#include <functional>

namespace mixer {

// Runs fn(i) for every i in [0, count) using up to `jobs` worker threads.
// Indices are split into contiguous chunks, so per-index work must not
// depend on execution order. The first exception thrown wins and is
// rethrown on the calling thread after all workers join.
void parallel_for(std::int64_t count, int jobs, const std::function<void(std::int64_t)>& fn);

} // namespace mixer
