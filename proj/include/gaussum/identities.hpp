#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaussum/field.hpp"

namespace gaussum {

/// Each checker sweeps one closed-form Gauss/Jacobi sum identity over a field
/// and returns the maximal relative residual; the residual scale is noted per
/// function. At desk scale residuals sit near sqrt(N) * machine epsilon, so
/// they double as a regression canary for summation-order bugs.

/// |G(chi)G(conj chi) - chi(-1) q^m| / q^m over nontrivial chi.
double check_conjugation(const FieldCtx& ctx);

/// |G(chi^p) - G(chi)| / q^{m/2} over all chi.
double check_frobenius(const FieldCtx& ctx);

/// Hasse-Davenport product formula for d | q-1, with epsilon pinned to the
/// order-d character of index (q-1)/d:
/// |G(chi^d) - chi(d^d) prod_i G(chi eps^i)/G(eps^i)| / q^{m/2} over all chi.
double check_hd_product(const FieldCtx& ctx, int64_t d);

/// Hasse-Davenport lifting |G_m(pullback chi) - G(chi)^m| / q^{m/2} over
/// level-1 chi. Both contexts must come from the same tower.
double check_hd_lifting(const FieldCtx& level1, const FieldCtx& levelm);

/// |G(alpha,chi) - conj(chi)(alpha) G(chi)| / q^{m/2} over all (alpha, chi).
double check_scaled(const FieldCtx& ctx);

/// |jacobi_sum - jacobi_via_gauss| / q^{m(n-1)/2} over tuples of nontrivial
/// characters with nontrivial product; tuples violating the quotient
/// precondition are skipped. Large sweeps are subsampled deterministically
/// down to `max_tuples`.
double check_jacobi(const FieldCtx& ctx, int n, int64_t max_tuples = 4000);

struct IdentityReport {
  std::string field;     // e.g. "q=25" or "q=5^2 tower"
  std::string identity;  // checker name
  double residual = 0.0;
  int64_t sweep_size = 0;
  double seconds = 0.0;
};

struct IdentitySuiteOptions {
  int64_t lifting_order_cap = 1 << 15;  // skip towers with q^m above this
  int64_t jacobi_max_tuples = 4000;
};

/// Run every checker on the field of the given prime-power size (built as
/// (p, f, 1)), including lifting towers for m in {2, 3} within the cap.
std::vector<IdentityReport> run_identity_suite(int64_t prime_power,
                                               const IdentitySuiteOptions& opt = {});

}  // namespace gaussum
