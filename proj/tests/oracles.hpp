// Independent oracles used by the test suites. Everything here must stay
// decoupled from the implementation paths it checks: MPFR for
// arbitrary-precision special functions, closed forms and dense brute-force
// scans for the optimization-style quantities.
#ifndef FTS_TESTS_ORACLES_HPP
#define FTS_TESTS_ORACLES_HPP

#include <array>
#include <cstddef>

#include "fts/linalg.hpp"

namespace oracle {

/// Gamma via MPFR at 256-bit precision.
double gamma_mpfr(double x);

/// log Gamma via MPFR.
double log_gamma_mpfr(double x);

/// E_{1/2}(t) = exp(t^2) erfc(-t), both factors via MPFR.
double mlf_half_mpfr(double t);

/// Dense brute-force supremum of (u)^beta / E_beta(theta u^beta) on
/// [0, span]; E_beta evaluated through an independent MPFR series.
double m_constant_brute(double beta, double theta, double span, std::size_t points);

/// E_beta(x) summed in MPFR (positive arguments; independent of the
/// library's series/asymptotic branching).
double mlf_mpfr(double sigma, double x);

/// Closed-form singular values of a 2x2 matrix, descending.
std::array<double, 2> singular_values_2x2(const fts::Matrix& a);

/// Largest singular value via Eigen's JacobiSVD.
double spectral_norm_svd(const fts::Matrix& a);

}  // namespace oracle

#endif  // FTS_TESTS_ORACLES_HPP
