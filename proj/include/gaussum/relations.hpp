#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gaussum/characters.hpp"
#include "gaussum/equidist.hpp"
#include "gaussum/field.hpp"

namespace gaussum {

/// Basis index of the free abelian group on the symbols e_{eta,a}: eta a
/// multiplicative character of k (as a limit character with denominator
/// dividing q-1) and a a nonzero integer r-tuple.
struct MonomialKey {
  LimitCharacter eta;
  std::vector<int64_t> a;
  friend auto operator<=>(const MonomialKey&, const MonomialKey&) = default;
};

/// An element of the free abelian group: a finite formal product
/// prod e_{eta_i, a_i}^{eps_i} in normal form (distinct keys, no zero
/// exponents).
struct GaussMonomial {
  int64_t r = 0;
  int64_t p = 0;
  int64_t q = 0;
  std::map<MonomialKey, int64_t> terms;

  bool empty() const { return terms.empty(); }
  friend bool operator==(const GaussMonomial&, const GaussMonomial&) = default;
};

GaussMonomial make_monomial(int64_t r, int64_t p, int64_t q);
/// Merge a term into normal form (like keys combined, zeros dropped).
void insert_term(GaussMonomial& x, const MonomialKey& key, int64_t exponent);
/// Normal form of an explicit term list; idempotent.
GaussMonomial combine(int64_t r, int64_t p, int64_t q,
                      std::span<const std::pair<MonomialKey, int64_t>> terms);
void mul_into(GaussMonomial& x, const GaussMonomial& y, int64_t exponent = 1);
GaussMonomial inverse(const GaussMonomial& x);
/// Throws unless keys are well-formed for (p, q, r).
void validate(const GaussMonomial& x);

/// Generators of the relation subgroup:
///   P(eta,a)   = e_{eta,a} e_{conj eta,-a}             (conjugation pair)
///   Q(eta,a)   = e_{eta^p,pa}^{-1} e_{eta,a}           (Frobenius pair)
///   R(eta,a,d) = e_{eta^d,da}^{-1} prod_{xi^d=1} e_{eta xi,a}
///                                                      (Hasse-Davenport product)
struct Move {
  enum class Kind { P, Q, R };
  Kind kind = Kind::P;
  LimitCharacter eta;
  std::vector<int64_t> a;
  int64_t d = 0;  // R only; must divide q-1
  int64_t exponent = 1;
};

std::string kind_name(Move::Kind kind);

/// The formal product of the move (with its exponent applied).
GaussMonomial expand_move(const Move& mv, int64_t r, int64_t p, int64_t q);

/// An ordered list of moves certifying membership in the relation subgroup:
/// x = prod expand(moves). Also carries the derived constancy data
/// (t, D) with chi(t) ev_{m,chi}(x) = D^m for almost all chi.
struct Decomposition {
  std::vector<Move> moves;
};

struct NotInHWitness {
  enum class Kind { Independent, Blocked };
  Kind kind = Kind::Independent;
  // Independent: the support is nonempty and every b-group is independent,
  // so the evaluations equidistribute and cannot be almost-always constant.
  std::vector<std::string> pivot_trace;
  // Blocked: a dependency existed but no admissible reduction was found
  // (unreachable for genuine dependencies; kept as a certificate).
  std::string detail;
};

struct DecomposeResult {
  bool in_h = false;
  Decomposition decomposition;  // valid when in_h
  NotInHWitness witness;        // valid when !in_h
  std::vector<int64_t> mu_history;  // induction measure after each reduction
};

/// Decide membership of x in the subgroup generated by P/Q/R, following the
/// inductive reduction on mu = sum_i (mu_i - 1). Input must be in normal
/// form (it always is for GaussMonomial).
DecomposeResult decompose(const GaussMonomial& x);

/// Exact check (integer arithmetic only) that the moves expand to x.
bool verify_decomposition(const GaussMonomial& x, const Decomposition& dec);

/// The constancy data of a decomposition: t in (k^x)^r as a tuple of prime
/// subfield constants, and the complex constant D with
/// chi(t) ev_{m,chi}(x) = D^m.
///
/// The character values inside D are pinned to `frame`: a limit character
/// u/v means "the character sending the frame's induced level-1 generator to
/// exp(2*pi*i*u/v)", so evaluating ev in a given context requires deriving D
/// in that same context. The Gauss-sum products of R moves are canonical and
/// may come from any level-1 model `level1`.
struct ConstancyData {
  std::vector<int64_t> t_const;  // r constants mod p (the tuple t)
  std::complex<double> d_value;
};
ConstancyData derive_constancy(const Decomposition& dec, int64_t r, int64_t p,
                               const FieldCtx& frame, const FieldCtx& level1);

/// Max over sampled chi at the context level of
/// |chi(t) ev_{m,chi}(x) - D^m| / |D|^m, skipping the finitely many chi that
/// trivialize a key of x or of any move in the certificate. sample_budget = 0
/// enumerates all of T_m. Throws when every tuple is excluded.
double numeric_crosscheck(const GaussMonomial& x, const Decomposition& dec, const FieldCtx& ctx,
                          const FieldCtx& level1, int64_t sample_budget = 0, uint64_t seed = 1);

/// ev_{m,chi}(x) = prod G_m(eta chi^a)^eps from a gauss_all cache.
std::complex<double> evaluate_monomial(const GaussMonomial& x, std::span<const int64_t> chi,
                                       const FieldCtx& ctx,
                                       const std::vector<std::complex<double>>& gauss_cache);

/// Sample variance of chi(t) ev_{m,chi}(x) / |ev| over S_m for a given t
/// (as dlog tuple), used as the empirical non-constancy statistic.
double constancy_variance(const GaussMonomial& x, std::span<const int64_t> t_dlogs,
                          const FieldCtx& ctx);

/// Text grammar: terms `[eta=u/v; a=(a1,...,ar); exp=e]` joined by `*`.
/// exp defaults to 1. Throws std::invalid_argument with a position message.
GaussMonomial parse_monomial(const std::string& text, int64_t p, int64_t q);
std::string to_text(const GaussMonomial& x);

}  // namespace gaussum
