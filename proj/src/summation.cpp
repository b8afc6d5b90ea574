#include "gaussum/summation.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace gaussum {

namespace {
constexpr int64_t kChunk = 4096;
}

std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs) {
  if (xs.empty()) return {0.0, 0.0};
  if (xs.size() <= 8) {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& x : xs) acc += x;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

int hardware_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

std::complex<double> parallel_term_sum(int64_t n,
                                       const std::function<std::complex<double>(int64_t)>& term,
                                       int threads) {
  if (n <= 0) return {0.0, 0.0};
  if (threads <= 0) threads = hardware_threads();
  const int64_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::complex<double>> chunk_sums(chunks);

  auto run_chunk = [&](int64_t ci) {
    const int64_t lo = ci * kChunk;
    const int64_t hi = std::min(n, lo + kChunk);
    std::vector<std::complex<double>> buf;
    buf.reserve(hi - lo);
    for (int64_t i = lo; i < hi; ++i) buf.push_back(term(i));
    chunk_sums[ci] = pairwise_sum(buf);
  };

  if (threads == 1 || chunks == 1) {
    for (int64_t ci = 0; ci < chunks; ++ci) run_chunk(ci);
  } else {
    std::atomic<int64_t> next{0};
    std::vector<std::thread> pool;
    const int workers = static_cast<int>(std::min<int64_t>(threads, chunks));
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int64_t ci = next.fetch_add(1); ci < chunks; ci = next.fetch_add(1)) run_chunk(ci);
      });
    }
    for (auto& t : pool) t.join();
  }
  return pairwise_sum(chunk_sums);
}

}  // namespace gaussum
