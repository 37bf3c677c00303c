#pragma once

#include <cstddef>
#include <functional>

namespace isokit {

/// Worker count: hardware concurrency, capped by ISOKIT_THREADS when set.
std::size_t thread_count();

/// Runs body(i) for every i in [0, n). Each index is visited exactly once;
/// callers write results into per-index slots and reduce afterwards so the
/// outcome never depends on the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace isokit
