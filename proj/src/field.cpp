#include "gaussum/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace gaussum {

namespace {

// Dense polynomial arithmetic over F_p, little-endian coefficients.
// Vectors are kept at full length deg(modulus); products are reduced by the
// monic modulus from the top.
std::vector<int64_t> poly_mul_mod(const std::vector<int64_t>& a,
                                  const std::vector<int64_t>& b,
                                  const std::vector<int64_t>& mod, int64_t p) {
  const size_t d = mod.size() - 1;
  std::vector<int64_t> r(2 * d - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
  }
  for (size_t i = r.size(); i-- > d;) {
    const int64_t c = r[i];
    if (c == 0) continue;
    r[i] = 0;
    for (size_t j = 0; j < d; ++j) {
      if (mod[j] == 0) continue;
      r[i - d + j] = ((r[i - d + j] - c * mod[j]) % p + p) % p;
    }
  }
  r.resize(d);
  return r;
}

std::vector<int64_t> poly_pow_mod(std::vector<int64_t> base, int64_t e,
                                  const std::vector<int64_t>& mod, int64_t p) {
  const size_t d = mod.size() - 1;
  std::vector<int64_t> r(d, 0);
  r[0] = 1;
  while (e > 0) {
    if (e & 1) r = poly_mul_mod(r, base, mod, p);
    base = poly_mul_mod(base, base, mod, p);
    e >>= 1;
  }
  return r;
}

int poly_deg(const std::vector<int64_t>& a) {
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != 0) return static_cast<int>(i);
  return -1;
}

// gcd of two polynomials over F_p (result not normalized to monic; only the
// degree is inspected by callers).
std::vector<int64_t> poly_gcd(std::vector<int64_t> a, std::vector<int64_t> b, int64_t p) {
  while (poly_deg(b) >= 0) {
    int da = poly_deg(a);
    const int db = poly_deg(b);
    while (da >= db && da >= 0) {
      const int64_t c = (a[da] * mod_inverse(b[db], p)) % p;
      for (int j = 0; j <= db; ++j)
        a[da - db + j] = ((a[da - db + j] - c * b[j]) % p + p) % p;
      da = poly_deg(a);
    }
    std::swap(a, b);
  }
  return a;
}

// Deterministic Rabin test: X^{p^d} == X mod f, and for every prime l | d
// the polynomial X^{p^{d/l}} - X is coprime to f.
bool is_irreducible(const std::vector<int64_t>& mod, int64_t p) {
  const int64_t d = static_cast<int64_t>(mod.size()) - 1;
  if (d == 1) return true;
  std::vector<int64_t> x(d, 0);
  x[1] = 1;
  auto frob_power = [&](int64_t k) {
    // X^{p^k} mod f; p^k stays within desk-scale bounds by construction.
    int64_t e = 1;
    for (int64_t i = 0; i < k; ++i) e *= p;
    return poly_pow_mod(x, e, mod, p);
  };
  std::vector<int64_t> xq = frob_power(d);
  if (xq != x) return false;
  std::vector<int64_t> primes = factorize(d);
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (int64_t l : primes) {
    std::vector<int64_t> diff = frob_power(d / l);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    if (poly_deg(diff) < 0) return false;  // X^{p^{d/l}} == X: splits early
    std::vector<int64_t> g = poly_gcd(mod, diff, p);
    if (poly_deg(g) != 0) return false;
  }
  return true;
}

}  // namespace

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

std::vector<int64_t> factorize(int64_t n) {
  std::vector<int64_t> out;
  for (int64_t k = 2; k * k <= n; ++k) {
    while (n % k == 0) {
      out.push_back(k);
      n /= k;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::pair<int64_t, int64_t> split_prime_power(int64_t q) {
  if (q < 2) throw std::invalid_argument("not a prime power: " + std::to_string(q));
  std::vector<int64_t> fs = factorize(q);
  for (int64_t f : fs)
    if (f != fs[0]) throw std::invalid_argument("not a prime power: " + std::to_string(q));
  return {fs[0], static_cast<int64_t>(fs.size())};
}

int64_t mod_pow(int64_t base, int64_t exp, int64_t mod) {
  base %= mod;
  if (base < 0) base += mod;
  int64_t r = 1 % mod;
  while (exp > 0) {
    if (exp & 1) r = static_cast<int64_t>((__int128)r * base % mod);
    base = static_cast<int64_t>((__int128)base * base % mod);
    exp >>= 1;
  }
  return r;
}

int64_t mod_inverse(int64_t a, int64_t mod) {
  a %= mod;
  if (a < 0) a += mod;
  int64_t g = mod, x = 0, x1 = 1, a1 = a;
  while (a1 != 0) {
    const int64_t qt = g / a1;
    x -= qt * x1;
    std::swap(x, x1);
    g -= qt * a1;
    std::swap(g, a1);
  }
  if (g != 1) throw std::domain_error("element not invertible mod " + std::to_string(mod));
  return ((x % mod) + mod) % mod;
}

FieldCtx::Elem FieldCtx::one() const {
  Elem e(deg(), 0);
  e[0] = 1;
  return e;
}

FieldCtx::Elem FieldCtx::from_int(int64_t c) const {
  Elem e(deg(), 0);
  e[0] = ((c % p()) + p()) % p();
  return e;
}

int64_t FieldCtx::code(const Elem& x) const {
  int64_t c = 0;
  for (size_t j = x.size(); j-- > 0;) c = c * p() + x[j];
  return c;
}

FieldCtx::Elem FieldCtx::element_from_code(int64_t code) const {
  Elem x(deg(), 0);
  for (int64_t j = 0; j < deg(); ++j) {
    x[j] = code % p();
    code /= p();
  }
  return x;
}

bool FieldCtx::is_zero(const Elem& x) const {
  return std::all_of(x.begin(), x.end(), [](int64_t c) { return c == 0; });
}

FieldCtx::Elem FieldCtx::add(const Elem& a, const Elem& b) const {
  Elem r(deg());
  for (int64_t j = 0; j < deg(); ++j) r[j] = (a[j] + b[j]) % p();
  return r;
}

FieldCtx::Elem FieldCtx::sub(const Elem& a, const Elem& b) const {
  Elem r(deg());
  for (int64_t j = 0; j < deg(); ++j) r[j] = ((a[j] - b[j]) % p() + p()) % p();
  return r;
}

FieldCtx::Elem FieldCtx::neg(const Elem& a) const {
  Elem r(deg());
  for (int64_t j = 0; j < deg(); ++j) r[j] = (p() - a[j]) % p();
  return r;
}

FieldCtx::Elem FieldCtx::mul(const Elem& a, const Elem& b) const {
  return poly_mul_mod(a, b, modulus_, p());
}

FieldCtx::Elem FieldCtx::pow(const Elem& a, int64_t e) const {
  if (e < 0) return pow(inv(a), -e);
  return poly_pow_mod(a, e, modulus_, p());
}

FieldCtx::Elem FieldCtx::inv(const Elem& a) const {
  if (is_zero(a)) throw std::domain_error("division by zero field element");
  return pow(a, mult_order() - 1);
}

int64_t FieldCtx::trace_to_prime(const Elem& x) const {
  int64_t t = 0;
  for (int64_t j = 0; j < deg(); ++j) t += x[j] * trace_basis_[j];
  return t % p();
}

FieldCtx::Elem FieldCtx::norm_to_level(const Elem& x, int64_t target_m) const {
  if (target_m < 1 || level() % target_m != 0)
    throw std::invalid_argument("norm target level must divide the context level");
  if (is_zero(x)) return zero();
  const int64_t sub_order = static_cast<int64_t>(std::llround(std::pow(double(q()), double(target_m))));
  return pow(x, mult_order() / (sub_order - 1));
}

int64_t FieldCtx::dlog(const Elem& x) const {
  if (is_zero(x)) throw std::domain_error("dlog of zero");
  if (has_log_table()) return log_table_[code(x)];
  return dlog_bsgs(x);
}

FieldCtx::Elem FieldCtx::gen_pow(int64_t k) const {
  const int64_t M = mult_order();
  k = ((k % M) + M) % M;
  if (!exp_table_.empty()) return element_from_code(exp_table_[k]);
  return pow(generator_, k);
}

int64_t FieldCtx::dlog_at_level(const Elem& x, int64_t target_m) const {
  if (target_m < 1 || level() % target_m != 0)
    throw std::invalid_argument("target level must divide the context level");
  const int64_t sub_order = static_cast<int64_t>(std::llround(std::pow(double(q()), double(target_m))));
  const int64_t ratio = mult_order() / (sub_order - 1);
  const int64_t k = dlog(x);
  if (k % ratio != 0)
    throw std::domain_error("element does not lie in the requested subfield");
  return k / ratio;
}

std::complex<double> FieldCtx::root_of_unity(int64_t k) const {
  const int64_t M = mult_order();
  k = ((k % M) + M) % M;
  if (!unit_roots_.empty()) return unit_roots_[k];
  return std::polar(1.0, 2.0 * std::numbers::pi * double(k) / double(M));
}

std::complex<double> FieldCtx::p_th_root(int64_t t) const {
  t = ((t % p()) + p()) % p();
  return p_roots_[t];
}

void FieldCtx::build_tables(int64_t table_budget) {
  const int64_t d = deg();
  // Traces of the basis monomials X^j; trace is F_p-linear.
  trace_basis_.assign(d, 0);
  for (int64_t j = 0; j < d; ++j) {
    Elem sum(d, 0), cur(d, 0);
    cur[j] = 1;
    for (int64_t i = 0; i < d; ++i) {
      for (int64_t c = 0; c < d; ++c) sum[c] = (sum[c] + cur[c]) % p();
      cur = poly_pow_mod(cur, p(), modulus_, p());
    }
    for (int64_t c = 1; c < d; ++c)
      if (sum[c] != 0) throw std::logic_error("trace of basis element not in F_p");
    trace_basis_[j] = sum[0];
  }

  p_roots_.resize(p());
  for (int64_t t = 0; t < p(); ++t)
    p_roots_[t] = std::polar(1.0, 2.0 * std::numbers::pi * double(t) / double(p()));

  if (order() <= table_budget) {
    const int64_t M = mult_order();
    exp_table_.assign(M, 0);
    log_table_.assign(order(), -1);
    Elem cur = one();
    for (int64_t k = 0; k < M; ++k) {
      const int64_t c = code(cur);
      if (k > 0 && c == 1)
        throw std::logic_error("generator order below q^m - 1");
      exp_table_[k] = static_cast<int32_t>(c);
      log_table_[c] = static_cast<int32_t>(k);
      cur = mul(cur, generator_);
    }
    if (code(cur) != 1) throw std::logic_error("generator order exceeds q^m - 1");
    unit_roots_.resize(M);
    for (int64_t k = 0; k < M; ++k)
      unit_roots_[k] = std::polar(1.0, 2.0 * std::numbers::pi * double(k) / double(M));
  }
}

int64_t FieldCtx::dlog_bsgs(const Elem& x) const {
  const int64_t M = mult_order();
  const int64_t n = static_cast<int64_t>(std::ceil(std::sqrt(double(M))));
  std::unordered_map<int64_t, int64_t> baby;
  baby.reserve(n);
  Elem cur = one();
  for (int64_t j = 0; j < n; ++j) {
    baby.emplace(code(cur), j);
    cur = mul(cur, generator_);
  }
  const Elem giant_step = pow(inv(generator_), n);
  Elem y = x;
  for (int64_t i = 0; i * n <= M; ++i) {
    auto it = baby.find(code(y));
    if (it != baby.end()) return (i * n + it->second) % M;
    y = mul(y, giant_step);
  }
  throw std::logic_error("discrete log not found");
}

FieldCtx make_field(int64_t p, int64_t f, int64_t m, int64_t top_level, int64_t table_budget) {
  if (top_level == 0) top_level = m;
  if (!is_prime(p)) throw std::invalid_argument("p is not prime: " + std::to_string(p));
  if (f < 1 || m < 1 || top_level < 1 || top_level % m != 0)
    throw std::invalid_argument("require f, m >= 1 and m | top_level");

  const int64_t top_deg = f * top_level;
  double top_order_d = std::pow(double(p), double(top_deg));
  if (top_order_d > double(FieldCtx::kMaxOrder))
    throw std::invalid_argument("field too large: p^(f*top_level) exceeds the supported range");
  const int64_t top_order = static_cast<int64_t>(std::llround(top_order_d));

  // Smallest irreducible monic modulus of the top degree, by base-p code of
  // the non-leading coefficients.
  std::vector<int64_t> top_mod(top_deg + 1, 0);
  top_mod[top_deg] = 1;
  bool found = false;
  for (int64_t code = 0; code < top_order; ++code) {
    int64_t c = code;
    for (int64_t j = 0; j < top_deg; ++j) {
      top_mod[j] = c % p;
      c /= p;
    }
    if (is_irreducible(top_mod, p)) {
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("irreducible modulus search exhausted");

  // Smallest primitive element of the top field.
  const int64_t M_top = top_order - 1;
  std::vector<int64_t> prime_divs = factorize(std::max<int64_t>(M_top, 1));
  prime_divs.erase(std::unique(prime_divs.begin(), prime_divs.end()), prime_divs.end());
  std::vector<int64_t> top_gen;
  for (int64_t code = 1; code < top_order; ++code) {
    std::vector<int64_t> cand(top_deg, 0);
    int64_t c = code;
    for (int64_t j = 0; j < top_deg; ++j) {
      cand[j] = c % p;
      c /= p;
    }
    bool primitive = true;
    for (int64_t l : prime_divs) {
      std::vector<int64_t> pw = poly_pow_mod(cand, M_top / l, top_mod, p);
      if (poly_deg(pw) == 0 && pw[0] == 1 && M_top > 1) {
        primitive = false;
        break;
      }
    }
    if (M_top == 1) primitive = true;  // F_2: the only unit is 1
    if (primitive) {
      top_gen = cand;
      break;
    }
  }
  if (top_gen.empty()) throw std::logic_error("no primitive element found");

  FieldCtx ctx;
  ctx.params_ = {p, f, m, top_level, /*q=*/0, /*order=*/0};
  ctx.params_.q = static_cast<int64_t>(std::llround(std::pow(double(p), double(f))));
  ctx.params_.order = static_cast<int64_t>(std::llround(std::pow(double(ctx.params_.q), double(m))));

  if (m == top_level) {
    ctx.modulus_ = top_mod;
    ctx.generator_ = top_gen;
  } else {
    // gamma = Norm_{top -> m}(g_top); its minimal polynomial over F_p is the
    // level-m modulus and the class of X is the level-m generator.
    const int64_t sub_M = ctx.params_.order - 1;
    std::vector<int64_t> gamma = poly_pow_mod(top_gen, M_top / sub_M, top_mod, p);
    const int64_t d = f * m;
    // minpoly = prod_j (Y - gamma^{p^j}); coefficients live in the top field
    // during the product and must collapse to constants.
    std::vector<std::vector<int64_t>> minpoly = {std::vector<int64_t>(top_deg, 0)};
    minpoly[0][0] = 1;  // the constant polynomial 1 in Y
    std::vector<int64_t> conj = gamma;
    for (int64_t j = 0; j < d; ++j) {
      std::vector<std::vector<int64_t>> next(minpoly.size() + 1, std::vector<int64_t>(top_deg, 0));
      for (size_t k = 0; k < minpoly.size(); ++k) {
        // Y * coeff
        for (int64_t c = 0; c < top_deg; ++c)
          next[k + 1][c] = (next[k + 1][c] + minpoly[k][c]) % p;
        // -conj * coeff
        std::vector<int64_t> prod = poly_mul_mod(minpoly[k], conj, top_mod, p);
        for (int64_t c = 0; c < top_deg; ++c)
          next[k][c] = ((next[k][c] - prod[c]) % p + p) % p;
      }
      minpoly = std::move(next);
      conj = poly_pow_mod(conj, p, top_mod, p);
    }
    std::vector<int64_t> mod_m(d + 1, 0);
    for (int64_t k = 0; k <= d; ++k) {
      for (int64_t c = 1; c < top_deg; ++c)
        if (minpoly[k][c] != 0) throw std::logic_error("minimal polynomial coefficient not in F_p");
      mod_m[k] = minpoly[k][0];
    }
    if (mod_m[d] != 1) throw std::logic_error("minimal polynomial not monic");
    ctx.modulus_ = mod_m;
    ctx.generator_.assign(d, 0);
    if (d == 1) {
      ctx.generator_[0] = ((p - mod_m[0]) % p + p) % p;  // the root of Y + c
    } else {
      ctx.generator_[1] = 1;
    }
  }

  ctx.build_tables(table_budget);
  return ctx;
}

const FieldCtx& FieldTower::level(int64_t m) {
  auto it = cache_.find(m);
  if (it != cache_.end()) return *it->second;
  auto ctx = std::make_unique<FieldCtx>(make_field(p_, f_, m, top_, budget_));
  auto [pos, inserted] = cache_.emplace(m, std::move(ctx));
  return *pos->second;
}

}  // namespace gaussum
