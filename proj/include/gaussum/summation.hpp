#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace gaussum {

/// Compensated (Kahan) accumulator for complex doubles; summation order is
/// the call order, so results are reproducible for a fixed order.
class KahanSum {
 public:
  void add(std::complex<double> x) {
    const std::complex<double> y = x - comp_;
    const std::complex<double> t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  std::complex<double> value() const { return sum_; }

 private:
  std::complex<double> sum_{0.0, 0.0};
  std::complex<double> comp_{0.0, 0.0};
};

/// Pairwise sum in fixed recursive order.
std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs);

/// Deterministic parallel reduction of term(0..n-1): terms are grouped into
/// fixed-size chunks, each chunk is pairwise-summed, and chunk results are
/// combined pairwise in chunk order. The result is identical for any thread
/// count.
std::complex<double> parallel_term_sum(int64_t n,
                                       const std::function<std::complex<double>(int64_t)>& term,
                                       int threads = 1);

int hardware_threads();

}  // namespace gaussum
