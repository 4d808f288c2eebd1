#pragma once

#include <cstddef>
#include <functional>

namespace pfqed {

/// Upper bound on worker threads used by the library (>= 1).
int max_threads();

/// Sets the cap; values below 1 are clamped to 1.
void set_max_threads(int n);

/// Reads PFL_THREADS from the environment, if set, and applies it.
void configure_threads_from_env();

/// Runs body(i) for i in [0, n). Work is split into contiguous blocks so the
/// caller can write results into preallocated slots and reduce them serially,
/// which keeps sums bitwise reproducible regardless of the thread count.
void parallel_for(std::size_t n, std::function<void(std::size_t)> const& body);

} // namespace pfqed
