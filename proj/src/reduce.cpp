#include "srl/reduce.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace srl {

namespace {

template <class T>
T pairwise_impl(const T* v, std::size_t n) {
  if (n <= 16) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_impl(v, h) + pairwise_impl(v + h, n - h);
}

}  // namespace

double pairwise_sum(std::span<const double> v) {
  return pairwise_impl(v.data(), v.size());
}

std::complex<double> pairwise_sum(std::span<const std::complex<double>> v) {
  return pairwise_impl(v.data(), v.size());
}

int thread_count() {
  static const int n = [] {
    if (const char* env = std::getenv("SRL_THREADS")) {
      const int k = std::atoi(env);
      if (k > 0) return k;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
  }();
  return n;
}

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  const int workers = thread_count();
  if (workers <= 1 || n < 2) {
    fn(0, n);
    return;
  }
  // Fixed chunking: ~4 chunks per worker, independent of scheduling.
  const std::size_t nchunk =
      std::min<std::size_t>(n, static_cast<std::size_t>(workers) * 4);
  const std::size_t step = (n + nchunk - 1) / nchunk;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      const std::size_t b = c * step;
      if (b >= n) return;
      fn(b, std::min(n, b + step));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
}

double parallel_reduce(
    std::size_t n, std::size_t block,
    const std::function<double(std::size_t, std::size_t)>& block_sum) {
  if (n == 0) return 0.0;
  if (block == 0) block = 1024;
  const std::size_t nblocks = (n + block - 1) / block;
  std::vector<double> partial(nblocks);
  parallel_for(nblocks, [&](std::size_t b0, std::size_t b1) {
    for (std::size_t b = b0; b < b1; ++b) {
      const std::size_t lo = b * block;
      partial[b] = block_sum(lo, std::min(n, lo + block));
    }
  });
  return pairwise_sum(partial);
}

}  // namespace srl
