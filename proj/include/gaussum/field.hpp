#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace gaussum {

/// Parameters of a finite field F_{p^{f*m}} viewed as the degree-m extension
/// of the base field F_q, q = p^f.
struct FieldParams {
  int64_t p = 0;          // characteristic (prime)
  int64_t f = 0;          // base degree: q = p^f
  int64_t m = 0;          // extension level over the base field
  int64_t top_level = 0;  // level of the tower this context was built in
  int64_t q = 0;          // p^f
  int64_t order = 0;      // q^m
};

/// A concrete finite field with a fixed multiplicative generator.
///
/// Contexts built with the same (p, f, top_level) form a compatible tower:
/// the generator of every level is the norm of the top-level generator, so
/// character index pullback along norm maps is exact integer arithmetic.
/// Immutable after construction; safe to share across threads.
class FieldCtx {
 public:
  /// Coefficient vector over F_p of length deg(), little-endian (constant
  /// term first). The zero vector represents 0.
  using Elem = std::vector<int64_t>;

  static constexpr int64_t kDefaultTableBudget = int64_t{1} << 22;
  static constexpr int64_t kMaxOrder = int64_t{1} << 30;

  const FieldParams& params() const { return params_; }
  int64_t p() const { return params_.p; }
  int64_t q() const { return params_.q; }
  int64_t level() const { return params_.m; }
  int64_t order() const { return params_.order; }
  /// Order of the multiplicative group, q^m - 1.
  int64_t mult_order() const { return params_.order - 1; }
  int64_t deg() const { return static_cast<int64_t>(modulus_.size()) - 1; }

  /// Monic irreducible modulus, coefficients little-endian, size deg()+1.
  const std::vector<int64_t>& modulus() const { return modulus_; }
  const Elem& generator() const { return generator_; }
  bool has_log_table() const { return !log_table_.empty(); }

  Elem zero() const { return Elem(deg(), 0); }
  Elem one() const;
  /// The constant c mod p (canonical embedding of integers).
  Elem from_int(int64_t c) const;

  /// Base-p encoding of the coefficient vector; a bijection onto [0, order).
  int64_t code(const Elem& x) const;
  Elem element_from_code(int64_t code) const;

  bool is_zero(const Elem& x) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(const Elem& a, int64_t e) const;
  Elem inv(const Elem& a) const;

  /// Absolute trace to F_p: sum of x^{p^j} over all deg() Frobenius powers.
  int64_t trace_to_prime(const Elem& x) const;

  /// x^{(q^m-1)/(q^target-1)}; lies in the level-`target_m` subfield.
  Elem norm_to_level(const Elem& x, int64_t target_m) const;

  /// Discrete log with respect to generator(); throws on 0.
  int64_t dlog(const Elem& x) const;

  /// generator()^k for any integer k (reduced mod q^m - 1).
  Elem gen_pow(int64_t k) const;

  /// dlog of x relative to the level-`target_m` subfield generator
  /// g^{(q^m-1)/(q^t-1)}. Throws if x does not lie in that subfield.
  int64_t dlog_at_level(const Elem& x, int64_t target_m) const;

  /// exp(2*pi*i * k / (q^m - 1)), table-backed when available.
  std::complex<double> root_of_unity(int64_t k) const;
  /// exp(2*pi*i * t / p) for t in [0, p).
  std::complex<double> p_th_root(int64_t t) const;
  /// The additive character value psi(x) = exp(2*pi*i*Tr(x)/p).
  std::complex<double> psi(const Elem& x) const { return p_th_root(trace_to_prime(x)); }

 private:
  friend FieldCtx make_field(int64_t, int64_t, int64_t, int64_t, int64_t);

  void build_tables(int64_t table_budget);
  int64_t dlog_bsgs(const Elem& x) const;

  FieldParams params_;
  std::vector<int64_t> modulus_;
  Elem generator_;
  std::vector<int64_t> trace_basis_;           // Tr(X^j) for j < deg()
  std::vector<int32_t> exp_table_;             // dlog -> element code
  std::vector<int32_t> log_table_;             // element code -> dlog, -1 for 0
  std::vector<std::complex<double>> unit_roots_;  // exp(2*pi*i*k/(q^m-1))
  std::vector<std::complex<double>> p_roots_;     // exp(2*pi*i*t/p)
};

/// Construct the level-m member of the (p, f, top_level) tower.
///
/// The top level gets the lexicographically smallest irreducible modulus and
/// its smallest primitive element; a lower level gets the minimal polynomial
/// of the norm of the top generator as modulus, with the class of X as its
/// generator. Hence Norm(g_m) = g_{m'} exactly for all m' | m | top_level.
FieldCtx make_field(int64_t p, int64_t f, int64_t m, int64_t top_level = 0,
                    int64_t table_budget = FieldCtx::kDefaultTableBudget);

/// Lazily-built cache of the contexts of one tower.
class FieldTower {
 public:
  FieldTower(int64_t p, int64_t f, int64_t top_level,
             int64_t table_budget = FieldCtx::kDefaultTableBudget)
      : p_(p), f_(f), top_(top_level), budget_(table_budget) {}

  const FieldCtx& level(int64_t m);
  int64_t top_level() const { return top_; }

 private:
  int64_t p_, f_, top_, budget_;
  std::map<int64_t, std::unique_ptr<FieldCtx>> cache_;
};

bool is_prime(int64_t n);
/// Prime factorization with multiplicity, ascending.
std::vector<int64_t> factorize(int64_t n);
/// q = p^e for prime p; throws if the input is not a prime power.
std::pair<int64_t, int64_t> split_prime_power(int64_t q);

int64_t mod_pow(int64_t base, int64_t exp, int64_t mod);
int64_t mod_inverse(int64_t a, int64_t mod);

}  // namespace gaussum
