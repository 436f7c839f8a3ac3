#ifndef MLRANK_PARALLEL_HPP
#define MLRANK_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace mlrank {

// Global worker cap for point enumerations (set by the CLI --threads flag).
// Results are merged with order-independent reductions, so the cap never
// changes any output.
int thread_cap();
void set_thread_cap(int n);

// Runs fn(chunk_index, begin, end) over a partition of [0, total) into
// `chunks` contiguous ranges, possibly concurrently.
void run_chunked(uint64_t total, int chunks,
                 const std::function<void(int, uint64_t, uint64_t)>& fn);

}  // namespace mlrank

#endif
