#pragma once

#include <functional>
#include <vector>

namespace hcurv {

/// Worker count for grid sweeps: HCURV_THREADS environment variable when set,
/// otherwise hardware concurrency. Always >= 1.
int thread_count();

/// Runs fn(0..n-1), possibly concurrently. Each index must write only its own
/// preallocated slots so results are independent of the partition.
void parallel_rows(int n, const std::function<void(int)>& fn);

/// Deterministic pairwise summation in index order; independent of how the
/// values were produced.
double pairwise_sum(const std::vector<double>& v);

} // namespace hcurv
