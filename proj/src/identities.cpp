#include "gaussum/identities.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "gaussum/charsums.hpp"

namespace gaussum {

namespace {

std::complex<double> cpow_uint(std::complex<double> z, int64_t e) {
  std::complex<double> acc{1.0, 0.0};
  while (e > 0) {
    if (e & 1) acc *= z;
    z *= z;
    e >>= 1;
  }
  return acc;
}

}  // namespace

double check_conjugation(const FieldCtx& ctx) {
  const int64_t M = ctx.mult_order();
  const double qm = double(ctx.order());
  const auto g = gauss_all(ctx);
  // chi(-1): -1 = g^{M/2} for odd q; in characteristic 2, -1 = 1.
  const int64_t dlog_minus1 = (ctx.p() == 2) ? 0 : M / 2;
  double worst = 0.0;
  for (int64_t e = 1; e < M; ++e) {
    const auto chi_minus1 = ctx.root_of_unity(e * dlog_minus1);
    const double r = std::abs(g[e] * g[M - e] - chi_minus1 * qm) / qm;
    worst = std::max(worst, r);
  }
  return worst;
}

double check_frobenius(const FieldCtx& ctx) {
  const int64_t M = ctx.mult_order();
  const double scale = std::sqrt(double(ctx.order()));
  const auto g = gauss_all(ctx);
  double worst = 0.0;
  for (int64_t e = 0; e < M; ++e)
    worst = std::max(worst, std::abs(g[(e * ctx.p()) % M] - g[e]) / scale);
  return worst;
}

double check_hd_product(const FieldCtx& ctx, int64_t d) {
  const int64_t M = ctx.mult_order();
  if (d < 1 || M % d != 0)
    throw std::invalid_argument("check_hd_product requires d | q^m - 1");
  const double scale = std::sqrt(double(ctx.order()));
  const auto g = gauss_all(ctx);
  const int64_t eps = M / d;  // the pinned order-d character
  // d as a field element: d * 1; chi(d^d) via its dlog
  const int64_t dlog_d = ctx.dlog(ctx.from_int(d));
  double worst = 0.0;
  for (int64_t e = 0; e < M; ++e) {
    std::complex<double> rhs = ctx.root_of_unity(e * ((dlog_d * (d % M)) % M));
    for (int64_t i = 0; i < d; ++i) rhs *= g[(e + i * eps) % M] / g[(i * eps) % M];
    const double r = std::abs(g[(e * d) % M] - rhs) / scale;
    worst = std::max(worst, r);
  }
  return worst;
}

double check_hd_lifting(const FieldCtx& level1, const FieldCtx& levelm) {
  const auto& a = level1.params();
  const auto& b = levelm.params();
  if (a.p != b.p || a.f != b.f || a.top_level != b.top_level || a.m != 1 || b.m % a.m != 0)
    throw std::invalid_argument("check_hd_lifting requires contexts of one tower");
  const int64_t M1 = level1.mult_order();
  const int64_t Mm = levelm.mult_order();
  const double scale = std::pow(std::sqrt(double(a.q)), double(b.m));
  const auto g1 = gauss_all(level1);
  const auto gm = gauss_all(levelm);
  double worst = 0.0;
  for (int64_t e = 0; e < M1; ++e) {
    const auto lifted = gm[pullback_index(e, M1, Mm)];
    const auto powed = cpow_uint(g1[e], b.m);
    worst = std::max(worst, std::abs(lifted - powed) / scale);
  }
  return worst;
}

double check_scaled(const FieldCtx& ctx) {
  const int64_t M = ctx.mult_order();
  const double scale = std::sqrt(double(ctx.order()));
  const auto g = gauss_all(ctx);
  double worst = 0.0;
  for (int64_t ka = 0; ka < M; ++ka) {
    const auto ga = gauss_all(ctx, ctx.gen_pow(ka));
    for (int64_t e = 0; e < M; ++e) {
      // conj(chi_e)(g^ka) = omega^{-e*ka}
      const auto rhs = ctx.root_of_unity(-(e * ka)) * g[e];
      worst = std::max(worst, std::abs(ga[e] - rhs) / scale);
    }
  }
  return worst;
}

double check_jacobi(const FieldCtx& ctx, int n, int64_t max_tuples) {
  if (n < 2 || n > 4) throw std::invalid_argument("check_jacobi supports n in {2,3,4}");
  const int64_t M = ctx.mult_order();
  const double scale = std::pow(double(ctx.order()), (n - 1) / 2.0);

  // count valid tuples to pick a deterministic stride
  int64_t total = 1;
  for (int i = 0; i < n; ++i) total *= (M - 1);
  const int64_t stride = std::max<int64_t>(1, total / std::max<int64_t>(1, max_tuples));

  double worst = 0.0;
  std::vector<int64_t> idx(n);
  int64_t visited = 0;
  for (int64_t flat = 0; flat < total; flat += stride) {
    int64_t f = flat;
    int64_t sum = 0;
    for (int i = 0; i < n; ++i) {
      idx[i] = 1 + (f % (M - 1));
      f /= (M - 1);
      sum = (sum + idx[i]) % M;
    }
    if (sum == 0) continue;  // quotient identity does not apply
    const auto direct = jacobi_sum(ctx, idx);
    const auto quotient = jacobi_via_gauss(ctx, idx);
    worst = std::max(worst, std::abs(direct - quotient) / scale);
    ++visited;
  }
  if (visited == 0) throw std::logic_error("jacobi sweep visited no valid tuple");
  return worst;
}

namespace {

template <typename F>
IdentityReport timed(const std::string& field, const std::string& name, int64_t sweep, F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  const double residual = fn();
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  return {field, name, residual, sweep, dt.count()};
}

}  // namespace

std::vector<IdentityReport> run_identity_suite(int64_t prime_power,
                                               const IdentitySuiteOptions& opt) {
  const auto [p, f] = split_prime_power(prime_power);
  const FieldCtx ctx = make_field(p, f, 1);
  const int64_t M = ctx.mult_order();
  const std::string field = "q=" + std::to_string(prime_power);

  std::vector<IdentityReport> out;
  out.push_back(timed(field, "conjugation", M - 1, [&] { return check_conjugation(ctx); }));
  out.push_back(timed(field, "frobenius", M, [&] { return check_frobenius(ctx); }));
  for (int64_t d = 1; d <= M; ++d) {
    if (M % d != 0) continue;
    out.push_back(timed(field, "hd_product d=" + std::to_string(d), M,
                        [&] { return check_hd_product(ctx, d); }));
  }
  out.push_back(timed(field, "scaled", M * M, [&] { return check_scaled(ctx); }));
  if (M >= 3) {
    for (int n = 2; n <= 3; ++n) {
      // direct jacobi sums cost (q-1)^{n-1} per tuple; keep n=3 budgets small
      const int64_t budget = (n == 2) ? opt.jacobi_max_tuples
                                      : std::min<int64_t>(opt.jacobi_max_tuples, 800);
      out.push_back(timed(field, "jacobi n=" + std::to_string(n), (M - 1) * (M - 1),
                          [&] { return check_jacobi(ctx, n, budget); }));
    }
  }
  for (int64_t m = 2; m <= 3; ++m) {
    double order = std::pow(double(prime_power), double(m));
    if (order > double(opt.lifting_order_cap)) continue;
    FieldTower tower(p, f, m);
    out.push_back(timed(field, "hd_lifting m=" + std::to_string(m), M, [&] {
      return check_hd_lifting(tower.level(1), tower.level(m));
    }));
  }
  return out;
}

}  // namespace gaussum
