#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gaussum {

inline constexpr std::size_t kDftNaiveThreshold = 512;

/// out[j] = sum_k in[k] * exp(sign * 2*pi*i * j*k / N) for any length N.
/// sign must be +1 or -1. Lengths below `naive_threshold` use the direct
/// O(N^2) sum with an exact N-th root table; larger lengths use the
/// Bluestein chirp transform over a power-of-two FFT.
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> in, int sign,
                                      std::size_t naive_threshold = kDftNaiveThreshold);

/// In-place radix-2 FFT; n must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a, int sign);

}  // namespace gaussum
