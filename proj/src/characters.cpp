#include "gaussum/characters.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gaussum {

LimitCharacter limit_char(int64_t u, int64_t v) {
  if (v == 0) throw std::invalid_argument("limit character with zero denominator");
  if (v < 0) {
    u = -u;
    v = -v;
  }
  u %= v;
  if (u < 0) u += v;
  const int64_t g = std::gcd(u, v);
  return {u / g, v / g};
}

LimitCharacter lc_mul(const LimitCharacter& a, const LimitCharacter& b) {
  // a.num/a.den + b.num/b.den mod 1, staying within int64 at desk scale.
  const int64_t g = std::gcd(a.den, b.den);
  const int64_t l = a.den / g * b.den;
  return limit_char(a.num * (l / a.den) + b.num * (l / b.den), l);
}

LimitCharacter lc_conj(const LimitCharacter& a) { return limit_char(-a.num, a.den); }

LimitCharacter lc_pow(const LimitCharacter& a, int64_t k) { return limit_char(a.num * k, a.den); }

LimitCharacter lc_pth_root(const LimitCharacter& a, int64_t p) {
  if (std::gcd(a.den, p) != 1)
    throw std::invalid_argument("character denominator not coprime to p");
  return limit_char(a.num * mod_inverse(p % a.den == 0 ? 1 : p, a.den) % a.den, a.den);
}

std::string to_string(const LimitCharacter& a) {
  return std::to_string(a.num) + "/" + std::to_string(a.den);
}

LimitCharacter parse_limit_char(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return limit_char(std::stoll(text), 1);
    return limit_char(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed character fraction: " + text);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("character fraction out of range: " + text);
  }
}

std::complex<double> eval_additive(const FieldCtx& ctx, const FieldCtx::Elem& alpha,
                                   const FieldCtx::Elem& x) {
  return ctx.psi(ctx.mul(alpha, x));
}

std::complex<double> eval_mult(const FieldCtx& ctx, const MultCharacter& chi,
                               const FieldCtx::Elem& x) {
  if (ctx.is_zero(x)) throw std::domain_error("multiplicative character at zero");
  return ctx.root_of_unity(chi.index * ctx.dlog(x));
}

int64_t pullback_index(int64_t e, int64_t from_mult_order, int64_t to_mult_order) {
  if (from_mult_order <= 0 || to_mult_order % from_mult_order != 0)
    throw std::invalid_argument("pullback requires (q^m'-1) | (q^m-1)");
  const int64_t ratio = to_mult_order / from_mult_order;
  e = ((e % from_mult_order) + from_mult_order) % from_mult_order;
  return (e * ratio) % to_mult_order;
}

int64_t realize(const LimitCharacter& xi, int64_t mult_order) {
  if (mult_order % xi.den != 0)
    throw std::domain_error("character " + to_string(xi) + " not defined at this level: " +
                            std::to_string(xi.den) + " does not divide " +
                            std::to_string(mult_order));
  return xi.num * (mult_order / xi.den) % mult_order;
}

LimitCharacter to_limit(int64_t index, int64_t mult_order) {
  return limit_char(index, mult_order);
}

int64_t pth_root_index(int64_t index, int64_t p, int64_t mult_order) {
  const int64_t M = mult_order;
  index = ((index % M) + M) % M;
  if (M == 1) return 0;
  return static_cast<int64_t>((__int128)index * mod_inverse(p, M) % M);
}

int64_t prime_to_p_part(int64_t n, int64_t p) {
  while (n % p == 0) n /= p;
  return n;
}

std::vector<LimitCharacter> roots_mu(const LimitCharacter& eta, int64_t mu, int64_t p) {
  if (mu < 1) throw std::invalid_argument("roots_mu requires mu >= 1");
  std::vector<LimitCharacter> out;
  for (int64_t j = 0; j < mu; ++j) {
    LimitCharacter cand = limit_char(eta.num + j * eta.den, mu * eta.den);
    if (std::gcd(cand.den, p) == 1) out.push_back(cand);
  }
  std::sort(out.begin(), out.end());
  const auto expected = static_cast<size_t>(prime_to_p_part(mu, p));
  if (out.size() != expected)
    throw std::logic_error("roots_mu cardinality mismatch");  // Frobenius is bijective
  return out;
}

std::vector<LimitCharacter> roots_mu_signed(const LimitCharacter& eta, int64_t mu, int64_t p) {
  if (mu == 0) throw std::invalid_argument("roots_mu requires mu != 0");
  if (mu > 0) return roots_mu(eta, mu, p);
  return roots_mu(lc_conj(eta), -mu, p);
}

std::vector<int64_t> roots_over_k(int64_t e, int64_t d, int64_t group_order) {
  const int64_t N = group_order;
  e = ((e % N) + N) % N;
  d = ((d % N) + N) % N;
  std::vector<int64_t> out;
  if (d == 0) {
    if (e == 0)
      for (int64_t y = 0; y < N; ++y) out.push_back(y);
    return out;
  }
  const int64_t g = std::gcd(d, N);
  if (e % g != 0) return out;
  const int64_t y0 = static_cast<int64_t>((__int128)(e / g) * mod_inverse(d / g, N / g) % (N / g));
  for (int64_t t = 0; t < g; ++t) out.push_back(y0 + t * (N / g));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gaussum
