#include "gaussum/charsums.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "gaussum/summation.hpp"

namespace gaussum {

namespace {

// psi(alpha * g^k) for k = 0..M-1, walking the powers of g once.
std::vector<std::complex<double>> psi_sequence(const FieldCtx& ctx, const FieldCtx::Elem& alpha) {
  if (ctx.is_zero(alpha)) throw std::invalid_argument("gauss sum with alpha = 0");
  const int64_t M = ctx.mult_order();
  std::vector<std::complex<double>> s(M);
  FieldCtx::Elem cur = alpha;
  for (int64_t k = 0; k < M; ++k) {
    s[k] = ctx.psi(cur);
    cur = ctx.mul(cur, ctx.generator());
  }
  return s;
}

}  // namespace

std::complex<double> gauss_sum(const FieldCtx& ctx, const MultCharacter& chi,
                               const FieldCtx::Elem& alpha) {
  if (ctx.is_zero(alpha)) throw std::invalid_argument("gauss sum with alpha = 0");
  const int64_t M = ctx.mult_order();
  const int64_t e = ((chi.index % M) + M) % M;
  KahanSum acc;
  FieldCtx::Elem cur = alpha;
  for (int64_t k = 0; k < M; ++k) {
    acc.add(ctx.root_of_unity(e * k) * ctx.psi(cur));
    cur = ctx.mul(cur, ctx.generator());
  }
  return -acc.value();
}

std::complex<double> gauss_sum(const FieldCtx& ctx, const MultCharacter& chi) {
  return gauss_sum(ctx, chi, ctx.one());
}

std::complex<double> gauss_sum(const FieldCtx& ctx, int64_t chi_index) {
  return gauss_sum(ctx, mult_char(ctx, chi_index), ctx.one());
}

std::vector<std::complex<double>> gauss_all(const FieldCtx& ctx, const FieldCtx::Elem& alpha,
                                            std::size_t naive_threshold) {
  // G(alpha, chi_e) = -sum_k psi(alpha*g^k) e^{+2*pi*i*e*k/M}: a sign=+1 DFT.
  std::vector<std::complex<double>> s = psi_sequence(ctx, alpha);
  std::vector<std::complex<double>> out = dft(s, +1, naive_threshold);
  for (auto& v : out) v = -v;
  return out;
}

std::vector<std::complex<double>> gauss_all(const FieldCtx& ctx, std::size_t naive_threshold) {
  return gauss_all(ctx, ctx.one(), naive_threshold);
}

namespace {

std::filesystem::path cache_path(const FieldCtx& ctx, int64_t alpha_dlog) {
  const char* dir = std::getenv("GAUSSUM_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return {};
  const auto& pr = ctx.params();
  std::string name = "gauss_p" + std::to_string(pr.p) + "_f" + std::to_string(pr.f) + "_m" +
                     std::to_string(pr.m) + "_t" + std::to_string(pr.top_level) + "_a" +
                     std::to_string(alpha_dlog) + ".bin";
  return std::filesystem::path(dir) / name;
}

constexpr uint64_t kCacheMagic = 0x4741555353554d31ull;  // "GAUSSUM1"

}  // namespace

std::vector<std::complex<double>> gauss_all_cached(const FieldCtx& ctx,
                                                   const FieldCtx::Elem& alpha) {
  const int64_t M = ctx.mult_order();
  const int64_t alpha_dlog = ctx.dlog(alpha);
  const std::filesystem::path path = cache_path(ctx, alpha_dlog);
  if (!path.empty() && std::filesystem::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    uint64_t magic = 0;
    int64_t count = 0;
    in.read(reinterpret_cast<char*>(&magic), sizeof(magic));
    in.read(reinterpret_cast<char*>(&count), sizeof(count));
    if (in && magic == kCacheMagic && count == M) {
      std::vector<std::complex<double>> out(M);
      in.read(reinterpret_cast<char*>(out.data()), M * sizeof(std::complex<double>));
      if (in) return out;
    }
  }
  std::vector<std::complex<double>> out = gauss_all(ctx, alpha);
  if (!path.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (os) {
      int64_t count = M;
      os.write(reinterpret_cast<const char*>(&kCacheMagic), sizeof(kCacheMagic));
      os.write(reinterpret_cast<const char*>(&count), sizeof(count));
      os.write(reinterpret_cast<const char*>(out.data()), M * sizeof(std::complex<double>));
    }
  }
  return out;
}

std::vector<std::complex<double>> gauss_all_cached(const FieldCtx& ctx) {
  return gauss_all_cached(ctx, ctx.one());
}

std::complex<double> jacobi_sum(const FieldCtx& ctx, std::span<const int64_t> chi_indices) {
  const int64_t n = static_cast<int64_t>(chi_indices.size());
  if (n < 2) throw std::invalid_argument("jacobi sum needs at least two characters");
  const int64_t M = ctx.mult_order();
  std::vector<int64_t> idx(chi_indices.begin(), chi_indices.end());
  for (auto& e : idx) e = ((e % M) + M) % M;

  // Enumerate x_1..x_{n-1} over k^x in dlog order; x_n = 1 - sum is forced.
  // Character values accumulate as exponents, so each term costs one root
  // table lookup.
  std::vector<FieldCtx::Elem> unit_powers(M);
  for (int64_t k = 0; k < M; ++k) unit_powers[k] = ctx.gen_pow(k);
  KahanSum acc;
  const FieldCtx::Elem one = ctx.one();
  std::function<void(int64_t, const FieldCtx::Elem&, int64_t)> rec =
      [&](int64_t depth, const FieldCtx::Elem& partial, int64_t expo) {
        if (depth == n - 1) {
          const FieldCtx::Elem xn = ctx.sub(one, partial);
          if (!ctx.is_zero(xn))
            acc.add(ctx.root_of_unity(expo + idx[n - 1] * ctx.dlog(xn)));
          return;
        }
        for (int64_t k = 0; k < M; ++k)
          rec(depth + 1, ctx.add(partial, unit_powers[k]), (expo + idx[depth] * k) % M);
      };
  rec(0, ctx.zero(), 0);
  const double sign = (n % 2 == 0) ? -1.0 : 1.0;
  return sign * acc.value();
}

std::complex<double> jacobi_via_gauss(const FieldCtx& ctx, std::span<const int64_t> chi_indices) {
  const int64_t n = static_cast<int64_t>(chi_indices.size());
  if (n < 2) throw std::invalid_argument("jacobi sum needs at least two characters");
  const int64_t M = ctx.mult_order();
  int64_t prod_index = 0;
  for (int64_t e : chi_indices) {
    e = ((e % M) + M) % M;
    if (e == 0) throw std::domain_error("jacobi_via_gauss requires nontrivial characters");
    prod_index = (prod_index + e) % M;
  }
  if (prod_index == 0)
    throw std::domain_error("jacobi_via_gauss requires a nontrivial product character");
  std::complex<double> num{1.0, 0.0};
  for (int64_t e : chi_indices) num *= gauss_sum(ctx, e);
  return num / gauss_sum(ctx, prod_index);
}

}  // namespace gaussum
