#pragma once

#include <cstdint>
#include <functional>

namespace polar16 {

// Worker cap: POLAR16_THREADS when set, hardware concurrency otherwise.
int default_thread_count();

// Runs fn(worker, i) for i in [0, count) across up to `threads` workers, with
// worker in [0, threads). Work items must be independent; aggregation is the
// caller's job.
void parallel_for(int64_t count, int threads,
                  const std::function<void(int, int64_t)>& fn);

}  // namespace polar16
