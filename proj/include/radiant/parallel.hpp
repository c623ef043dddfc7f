#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace radiant {

// Global worker budget for data-parallel maps. 0 = hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Evaluates fn(i) for i in [0, n) across the worker budget. Results land
// in a preallocated slot per index, so the output never depends on
// scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn);

// Pairwise tree sum: deterministic reduction order regardless of how the
// values were produced.
double pairwise_sum(const std::vector<double> &v);

} // namespace radiant
