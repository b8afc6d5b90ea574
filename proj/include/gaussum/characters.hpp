#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "gaussum/field.hpp"

namespace gaussum {

/// An element of Char_k, the injective limit of the character groups of all
/// finite extensions: a reduced fraction num/den mod 1 with den coprime to
/// the characteristic. 0/1 is the trivial character.
struct LimitCharacter {
  int64_t num = 0;
  int64_t den = 1;
  friend auto operator<=>(const LimitCharacter&, const LimitCharacter&) = default;
};

/// Reduce u/v mod 1 to the canonical representative (0 <= num < den,
/// gcd(num, den) = 1). Throws if v == 0.
LimitCharacter limit_char(int64_t u, int64_t v);

inline bool is_trivial(const LimitCharacter& x) { return x.num == 0; }
LimitCharacter lc_mul(const LimitCharacter& a, const LimitCharacter& b);
LimitCharacter lc_conj(const LimitCharacter& a);
LimitCharacter lc_pow(const LimitCharacter& a, int64_t k);
/// The unique pth root: num * p^{-1} mod den. Requires gcd(p, den) = 1.
LimitCharacter lc_pth_root(const LimitCharacter& a, int64_t p);
/// Multiplicative order (the denominator).
inline int64_t lc_order(const LimitCharacter& a) { return a.den; }

std::string to_string(const LimitCharacter& a);   // "num/den"
LimitCharacter parse_limit_char(const std::string& text);

/// A multiplicative character of a fixed level, indexed against the context
/// generator: chi_e(g^k) = exp(2*pi*i*e*k/(q^m-1)).
struct MultCharacter {
  int64_t index = 0;
  int64_t modulus = 1;  // q^m - 1
};

inline MultCharacter mult_char(const FieldCtx& ctx, int64_t index) {
  const int64_t M = ctx.mult_order();
  return {((index % M) + M) % M, M};
}

/// psi_alpha(x) = exp(2*pi*i * Tr(alpha*x) / p).
std::complex<double> eval_additive(const FieldCtx& ctx, const FieldCtx::Elem& alpha,
                                   const FieldCtx::Elem& x);

/// chi_e(x); throws on x = 0.
std::complex<double> eval_mult(const FieldCtx& ctx, const MultCharacter& chi,
                               const FieldCtx::Elem& x);

/// Index of the norm pullback of a level-m' character to level m (m' | m):
/// e * (q^m-1)/(q^{m'}-1). Exact under the tower generator convention.
int64_t pullback_index(int64_t e, int64_t from_mult_order, int64_t to_mult_order);

/// Realize a limit character at a level with multiplicative order M = q^m-1;
/// throws when den does not divide M.
int64_t realize(const LimitCharacter& xi, int64_t mult_order);
inline MultCharacter realize(const LimitCharacter& xi, const FieldCtx& ctx) {
  return {realize(xi, ctx.mult_order()), ctx.mult_order()};
}

/// The reduced fraction index/(q^m-1).
LimitCharacter to_limit(int64_t index, int64_t mult_order);
inline LimitCharacter to_limit(const MultCharacter& chi) { return to_limit(chi.index, chi.modulus); }

/// Index of the unique pth root of chi: index * p^{-1} mod (q^m-1).
int64_t pth_root_index(int64_t index, int64_t p, int64_t mult_order);

/// All xi in Char_k with xi^mu = eta, for mu >= 1. Candidates
/// (num + j*den)/(mu*den) are reduced and kept when their denominator is
/// coprime to p; the result has exactly prime-to-p-part-of-mu elements,
/// sorted.
std::vector<LimitCharacter> roots_mu(const LimitCharacter& eta, int64_t mu, int64_t p);

/// roots_mu extended to mu < 0 via xi^mu = eta <=> xi^{-mu} = conj(eta).
std::vector<LimitCharacter> roots_mu_signed(const LimitCharacter& eta, int64_t mu, int64_t p);

/// Solutions y of d*y = e (mod group_order): the d-th roots of the index-e
/// character defined over the level with that group order. Sorted; empty
/// when gcd(d, group_order) does not divide e.
std::vector<int64_t> roots_over_k(int64_t e, int64_t d, int64_t group_order);

/// Prime-to-p part of n (n >= 1).
int64_t prime_to_p_part(int64_t n, int64_t p);

}  // namespace gaussum
