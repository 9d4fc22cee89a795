#pragma once

#include <cstddef>
#include <functional>

namespace fracsub {

/// Worker count: hardware concurrency, capped by FRACSUB_THREADS when set to
/// a positive integer. Always at least 1.
std::size_t worker_count();

/// Run job(i) for i in [0, n) on up to `workers` threads (0 = worker_count()).
/// Jobs must write only to their own output slot, which keeps results
/// independent of scheduling. The first exception thrown by a job is
/// rethrown after all workers finish. Calls made from inside a job run
/// serially on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& job, std::size_t workers = 0);

}  // namespace fracsub
