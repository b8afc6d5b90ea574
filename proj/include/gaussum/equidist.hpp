#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gaussum/characters.hpp"
#include "gaussum/field.hpp"

namespace gaussum {

/// One coordinate of the translation tuple t_i: either 1, an integer
/// constant c*1 in the prime subfield (canonical across levels), or a power
/// of the level-1 generator of the tower in play.
struct TSpec {
  enum class Kind { One, Constant, GenPower };
  Kind kind = Kind::One;
  int64_t value = 1;
};

TSpec t_one();
TSpec t_constant(int64_t c);
TSpec t_gen_power(int64_t s);
/// dlog of the level-1 element in the given (level-m) context.
int64_t t_dlog(const TSpec& t, const FieldCtx& ctx);
std::string to_string(const TSpec& t);

/// One factor of the monomial family: the Gauss sums G_m(eta * chi^a)
/// twisted by chi(t).
struct MonomialEntry {
  LimitCharacter eta;       // denominator must divide q - 1
  std::vector<int64_t> a;   // nonzero integer r-tuple
  std::vector<TSpec> t;     // r-tuple; empty means all-ones
};

struct MonomialConfig {
  int64_t p = 0;  // characteristic
  int64_t q = 0;  // level-1 field size p^f
  int64_t r = 0;
  std::vector<MonomialEntry> entries;
};

/// Validates invariants (nonzero a, eta defined over k, consistent arity).
void validate(const MonomialConfig& config);

/// Text grammar for configs: terms `[eta=u/v; a=(a1,...,ar); t=(t1,...,tr)]`
/// joined by `*`; the t field is optional, entries are integers or `g^s`.
/// Throws std::invalid_argument with a position message.
MonomialConfig parse_monomial_config(const std::string& text, int64_t p, int64_t q);
std::string to_text(const MonomialConfig& config);

/// a = sum_i min_{j: a_ij != 0} |a_ij|.
int64_t a_constant(const MonomialConfig& config);

/// Varying-characteristic sweeps need exponents bounded uniformly in q;
/// throws std::invalid_argument when some |a_ij| exceeds the cap.
void enforce_exponent_cap(const MonomialConfig& config, int64_t cap);

/// a = mu * b with mu > 0 and b primitive (coprime coordinates, positive
/// first nonzero coordinate), allowing mu < 0 when a points the other way.
struct PrimitiveSplit {
  int64_t mu = 0;
  std::vector<int64_t> b;
};
PrimitiveSplit primitive_decompose(std::span<const int64_t> a);

/// Character r-tuples at level m with eta_i * chi^{a_i} nontrivial for all i,
/// in row-major index order.
struct SEnumeration {
  int64_t r = 0;
  int64_t t_count = 0;                  // |T_m| = (q^m-1)^r
  std::vector<int64_t> flat_tuples;     // |S_m| tuples of length r
  int64_t size() const { return static_cast<int64_t>(flat_tuples.size()) / std::max<int64_t>(r, 1); }
  std::span<const int64_t> tuple(int64_t i) const {
    return {flat_tuples.data() + i * r, static_cast<size_t>(r)};
  }
};
SEnumeration enumerate_S(const MonomialConfig& config, const FieldCtx& ctx);

/// Phi_m(chi): coordinate i is q^{-m/2} chi(t_i) G_m(eta_i chi^{a_i}).
/// `gauss_cache` must be gauss_all(ctx). Throws when chi lies outside S_m.
std::vector<std::complex<double>> phi(const MonomialConfig& config, std::span<const int64_t> chi,
                                      const FieldCtx& ctx,
                                      const std::vector<std::complex<double>>& gauss_cache);

struct WeylReport {
  int64_t m = 0;
  std::vector<int64_t> c;
  std::complex<double> sigma;
  int64_t s_size = 0;
  int64_t a_const = 0;
  std::optional<double> a_fit;  // filled by weyl_series past the calibration window
  std::optional<double> rhs;
};

/// Sigma_m(Lambda_c) = |S_m|^{-1} sum_{chi in S_m} prod_i Phi_i^{c_i}.
/// Exactly 1 for c = 0. Throws when S_m is empty.
WeylReport weyl_sum(const MonomialConfig& config, std::span<const int64_t> c, const FieldCtx& ctx,
                    const std::vector<std::complex<double>>& gauss_cache, int threads = 1);

/// The explicit bound of the equidistribution estimate:
/// (A (q^m-1)^r q^{-m/2} + a (q^m-1)^{r-1}) / ((q^m-1)^{r-1} (q^m-1-a)).
/// Requires q^m > 1 + a.
double bound_rhs(int64_t a_const, double a_fit, int64_t q, int64_t m, int64_t r);

/// Weyl sums for one c over a range of levels. The first
/// `calibration_levels` admissible levels fit
/// A = max |Sigma| (q^m-1-a) (q^m-1)^{r-1} q^{m/2} / (q^m-1)^r; later levels
/// get the fitted bound attached. Inadmissible levels (empty S_m) are
/// skipped.
std::vector<WeylReport> weyl_series(const MonomialConfig& config, std::span<const int64_t> c,
                                    int64_t m_first, int64_t m_last, int threads = 1,
                                    int calibration_levels = 2,
                                    int64_t table_budget = FieldCtx::kDefaultTableBudget);

/// Exact linear-independence test of the vectors v_i = sum_{xi^mu_i = eta_i}
/// xi in V_k, grouped by the primitive direction b_i.
struct IndependenceResult {
  bool independent = true;
  std::vector<int64_t> group_b;          // the first dependent group, if any
  std::vector<size_t> group_entries;     // indices into config.entries
  std::vector<int64_t> kernel;           // integer dependency over group_entries
  std::vector<std::string> pivot_trace;  // elimination log for the certificate
};
IndependenceResult check_independence(const MonomialConfig& config);

/// Corollary-derived Jacobi experiments: normalized Jacobi values obtained by
/// pushing Phi through the explicit torus homomorphism of each corollary.
enum class JacobiPreset { AllFree, FixedTail, Powers };
JacobiPreset parse_preset(const std::string& name);

struct JacobiPresetSpec {
  JacobiPreset preset = JacobiPreset::AllFree;
  int64_t n = 2;                                        // AllFree: number of free characters
  std::vector<int64_t> d;                               // Powers: the exponents d_i
  int64_t free_count = 1;                               // FixedTail: number of free characters
  std::vector<std::vector<LimitCharacter>> fixed_etas;  // FixedTail: eta_{i,1..e_i}
};

/// The output dimension of the pushed-forward values (1 or n).
int64_t preset_torus_dim(const JacobiPresetSpec& spec);

/// The underlying monomial config whose Phi feeds the pushforward.
MonomialConfig preset_config(const JacobiPresetSpec& spec, int64_t p, int64_t q);

struct PresetRow {
  int64_t m = 0;
  std::vector<int64_t> c;
  std::complex<double> sigma;
  int64_t s_size = 0;
};

/// Weyl sums of the pushed-forward values for all 0 < ||c||_inf <= c_max.
std::vector<PresetRow> jacobi_preset_series(const JacobiPresetSpec& spec, int64_t p, int64_t q,
                                            int64_t m_first, int64_t m_last, int64_t c_max,
                                            int threads = 1);

/// Pushed-forward values at one level (exposed for oracle tests).
std::vector<std::vector<std::complex<double>>> jacobi_preset_values(const JacobiPresetSpec& spec,
                                                                    int64_t p, int64_t q,
                                                                    const FieldCtx& ctx);

}  // namespace gaussum
