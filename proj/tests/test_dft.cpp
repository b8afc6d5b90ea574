#include <doctest.h>

#include <random>

#include "gaussum/dft.hpp"

using namespace gaussum;

namespace {

std::vector<std::complex<double>> random_signal(std::size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::complex<double>> v(n);
  for (auto& x : v) x = {u(rng), u(rng)};
  return v;
}

double max_err(const std::vector<std::complex<double>>& a,
               const std::vector<std::complex<double>>& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

}  // namespace

TEST_CASE("chirp transform matches the naive DFT at awkward lengths") {
  for (std::size_t n : {2u, 3u, 5u, 17u, 24u, 97u, 360u, 1000u}) {
    for (int sign : {+1, -1}) {
      const auto x = random_signal(n, 1000 + n + sign);
      const auto naive = dft(x, sign, /*naive_threshold=*/100000);
      const auto chirp = dft(x, sign, /*naive_threshold=*/1);
      CHECK(max_err(naive, chirp) < 1e-10 * std::sqrt(double(n)));
    }
  }
}

TEST_CASE("forward then backward recovers the input") {
  const std::size_t n = 61;
  const auto x = random_signal(n, 42);
  auto fwd = dft(x, -1, 1);
  auto back = dft(fwd, +1, 1);
  for (auto& v : back) v /= double(n);
  CHECK(max_err(back, x) < 1e-12);
}

TEST_CASE("degenerate lengths") {
  CHECK(dft({}, +1).empty());
  std::vector<std::complex<double>> one{{2.5, -1.0}};
  const auto out = dft(one, -1);
  CHECK(std::abs(out[0] - one[0]) < 1e-15);
  CHECK_THROWS_AS(dft(one, 3), std::invalid_argument);
}
