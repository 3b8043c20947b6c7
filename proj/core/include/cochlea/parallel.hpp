#pragma once

#include <cstddef>
#include <functional>

namespace cochlea {

/// Worker count used by parallel_for; 0 means hardware concurrency.
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs body(i) for i in [0, n). Each index is handled exactly once, so bodies
/// that write only to slot i give results independent of the thread count.
/// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cochlea
