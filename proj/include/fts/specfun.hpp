#ifndef FTS_SPECFUN_HPP
#define FTS_SPECFUN_HPP

#include <cstddef>

namespace fts {

/// Gamma function for positive real arguments.
///
/// Lanczos rational approximation (g = 6.0246800..., 13 terms) for the core
/// range, Stirling's series for large arguments. Relative error is below
/// 1e-13 over the supported range.
///
/// Throws std::domain_error for x <= 0 and std::overflow_error once the
/// result leaves the double range (x > 171.624).
double gamma(double x);

/// Natural log of the gamma function, x > 0.
double log_gamma(double x);

/// Parameters of the one-parameter Mittag-Leffler function E_sigma.
struct MlfParams {
  double sigma;             ///< order, 0 < sigma <= 1
  double rel_tol = 1e-12;   ///< requested relative accuracy, < 1e-3

  void validate() const;    ///< throws std::invalid_argument when out of range
};

/// One-parameter Mittag-Leffler function E_sigma(t) = sum_b t^b / Gamma(b*sigma+1).
///
/// Supported argument range is t >= -1 (larger negative arguments are not
/// needed by any caller here and are rejected). Evaluation uses the power
/// series with term-ratio stopping for small and moderate arguments and
/// switches to the exponential asymptotic form
///     E_sigma(x) ~ (1/sigma) exp(x^{1/sigma}) - sum_k x^{-k} / Gamma(1-k*sigma)
/// for large positive x. Both branches agree within 10*rel_tol across the
/// crossover window (checked by the branch-consistency test).
///
/// sigma = 1 reduces exactly to exp(t).
///
/// Throws std::overflow_error when x^{1/sigma} exceeds the exponential range
/// and std::runtime_error when the requested tolerance cannot be certified.
double mittag_leffler(const MlfParams& params, double t);

/// Convenience overload at the default tolerance.
double mittag_leffler(double sigma, double t);

/// Relative residual of the fractional-integral eigenfunction identity
///
///   (1/Gamma(sigma)) \int_r^s (s-l)^{sigma-1} psi(l) dl  =  (psi(s)-1)/theta
///
/// for psi(l) = E_sigma(theta (l-r)^sigma). The weakly singular kernel is
/// absorbed with product-integration weights (quadratic interpolation on a
/// mesh graded toward both endpoints). Validation probe only; not used by
/// the certificate computations.
double psi_eigenfunction_residual(double sigma, double theta, double r, double s,
                                  std::size_t quadrature_points);

namespace detail {

/// Series branch of E_sigma, exposed for the branch-consistency test.
double mlf_series(double sigma, double t, double rel_tol);

/// Asymptotic branch of E_sigma for large positive arguments.
double mlf_asymptotic(double sigma, double t, double rel_tol);

/// Branch crossover: asymptotic form is used once t^{1/sigma} exceeds this.
inline constexpr double kMlfCrossoverExponent = 30.0;

/// 1 / Gamma(1 - y) for y > 0 via the reflection formula; zero at the poles.
double reciprocal_gamma_one_minus(double y);

}  // namespace detail

}  // namespace fts

#endif  // FTS_SPECFUN_HPP
