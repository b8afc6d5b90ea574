#include "gaussum/dft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gaussum {

void fft_pow2(std::vector<std::complex<double>>& a, int sign) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft size must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / double(len);
    const std::complex<double> wl = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w{1.0, 0.0};
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

namespace {

std::vector<std::complex<double>> dft_naive(std::span<const std::complex<double>> in, int sign) {
  const std::size_t n = in.size();
  std::vector<std::complex<double>> roots(n);
  for (std::size_t k = 0; k < n; ++k)
    roots[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * double(k) / double(n));
  std::vector<std::complex<double>> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) acc += in[k] * roots[(j * k) % n];
    out[j] = acc;
  }
  return out;
}

// Bluestein: jk = (j^2 + k^2 - (j-k)^2)/2, turning the DFT into a
// convolution with the chirp exp(sign*pi*i*k^2/N). k^2 is reduced mod 2N to
// keep the angle argument small.
std::vector<std::complex<double>> dft_bluestein(std::span<const std::complex<double>> in, int sign) {
  const std::size_t n = in.size();
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;

  std::vector<std::complex<double>> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t k2 = (k * k) % (2 * n);
    chirp[k] = std::polar(1.0, sign * std::numbers::pi * double(k2) / double(n));
  }

  std::vector<std::complex<double>> a(m, {0.0, 0.0}), b(m, {0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) a[k] = in[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);

  fft_pow2(a, -1);
  fft_pow2(b, -1);
  for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
  fft_pow2(a, +1);

  std::vector<std::complex<double>> out(n);
  const double inv_m = 1.0 / double(m);
  for (std::size_t j = 0; j < n; ++j) out[j] = a[j] * inv_m * chirp[j];
  return out;
}

}  // namespace

std::vector<std::complex<double>> dft(std::span<const std::complex<double>> in, int sign,
                                      std::size_t naive_threshold) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("dft sign must be +1 or -1");
  if (in.empty()) return {};
  if (in.size() < naive_threshold || in.size() == 1) return dft_naive(in, sign);
  return dft_bluestein(in, sign);
}

}  // namespace gaussum
