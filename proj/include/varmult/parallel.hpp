// Minimal deterministic parallel-for: static contiguous chunking over
// std::thread, thread count capped by VARMULT_THREADS. Work items must write
// to disjoint slots; with that discipline results are bit-identical to the
// sequential order regardless of thread count.
#pragma once

#include <cstdint>
#include <functional>

namespace varmult {

// Effective worker count: min(VARMULT_THREADS if set, hardware concurrency),
// at least 1.
int max_threads();

// Invoke body(begin, end) over a static partition of [0, n). Runs inline when
// a single worker suffices.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& body);

} // namespace varmult
