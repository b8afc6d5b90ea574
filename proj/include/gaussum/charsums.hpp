#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "gaussum/characters.hpp"
#include "gaussum/dft.hpp"
#include "gaussum/field.hpp"

namespace gaussum {

/// G(alpha, chi) = -sum_{t != 0} chi(t) psi(alpha*t), summed in dlog order
/// with compensated accumulation. alpha must be nonzero.
std::complex<double> gauss_sum(const FieldCtx& ctx, const MultCharacter& chi,
                               const FieldCtx::Elem& alpha);
std::complex<double> gauss_sum(const FieldCtx& ctx, const MultCharacter& chi);
std::complex<double> gauss_sum(const FieldCtx& ctx, int64_t chi_index);

/// All Gauss sums at once: entry e is G(alpha, chi_e). The sequence
/// k -> psi(alpha*g^k) is transformed by an arbitrary-length DFT (naive
/// below `naive_threshold`, chirp above).
std::vector<std::complex<double>> gauss_all(const FieldCtx& ctx, const FieldCtx::Elem& alpha,
                                            std::size_t naive_threshold = kDftNaiveThreshold);
std::vector<std::complex<double>> gauss_all(const FieldCtx& ctx,
                                            std::size_t naive_threshold = kDftNaiveThreshold);

/// gauss_all with an optional binary file cache. When the environment
/// variable GAUSSUM_CACHE_DIR is set, results are persisted per
/// (p, f, m, top_level, dlog(alpha)).
std::vector<std::complex<double>> gauss_all_cached(const FieldCtx& ctx,
                                                   const FieldCtx::Elem& alpha);
std::vector<std::complex<double>> gauss_all_cached(const FieldCtx& ctx);

/// J(chi_1, ..., chi_n) = (-1)^{n-1} sum_{x_1+...+x_n = 1} prod chi_i(x_i)
/// over nonzero x_i, by direct summation. Requires n >= 2.
std::complex<double> jacobi_sum(const FieldCtx& ctx, std::span<const int64_t> chi_indices);

/// The Gauss-quotient route: G(chi_1)...G(chi_n)/G(chi_1...chi_n). All chi_i
/// and their product must be nontrivial.
std::complex<double> jacobi_via_gauss(const FieldCtx& ctx, std::span<const int64_t> chi_indices);

}  // namespace gaussum
