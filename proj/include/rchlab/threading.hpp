#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace rchlab {

// Worker count used by the batched drivers.  Resolution order: explicit
// set_thread_count, the RCH_LAB_THREADS environment variable (0 = auto),
// hardware concurrency.  Results never depend on the value: work is split by
// index and every index writes its own output slot.
int thread_count();
void set_thread_count(int n);  // 0 restores auto

// Calls fn(begin, end) on disjoint contiguous chunks covering [0, n),
// possibly from several threads, and joins before returning.
void parallel_for(std::int64_t n,
                  const std::function<void(std::int64_t, std::int64_t)>& fn);

// Fixed-topology pairwise sum; the result depends only on the array contents,
// not on thread count or SIMD backend.
double pairwise_sum(std::span<const double> xs);

}  // namespace rchlab
