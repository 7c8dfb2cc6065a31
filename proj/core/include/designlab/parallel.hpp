#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace designlab {

// Worker count used by every parallel loop in the library. Results never
// depend on this value; it only changes wall-clock time.
void set_thread_count(unsigned threads);
unsigned thread_count();

// Reads DESIGNLAB_THREADS; falls back to hardware concurrency.
unsigned default_thread_count();

// Runs body(i) for i in [0, n). Iterations are split into contiguous chunks
// across workers. body must only write to per-index state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Pairwise (tree) summation. The association order depends only on the
// length of the input.
double tree_sum(std::span<const double> values);

}  // namespace designlab
