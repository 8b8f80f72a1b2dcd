#pragma once

// Deterministic reductions and a small block-parallel loop.
//
// Parallel work is always split into fixed-size blocks whose outputs land in
// preallocated slots; the final combine is a serial pairwise tree. The result
// is therefore independent of the number of worker threads (SRL_THREADS).

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace srl {

// Pairwise (tree) summation in a fixed order.
double pairwise_sum(std::span<const double> v);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> v);

// Number of worker threads: SRL_THREADS if set, else hardware concurrency.
int thread_count();

// Runs fn(begin, end) over disjoint chunks of [0, n). Chunk boundaries depend
// only on n, never on the thread count.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn);

// Block-parallel map-reduce: fills per-block partial sums with a fixed block
// size, then combines with pairwise_sum.
double parallel_reduce(std::size_t n, std::size_t block,
                       const std::function<double(std::size_t, std::size_t)>& block_sum);

}  // namespace srl
