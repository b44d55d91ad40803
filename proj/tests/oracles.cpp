#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

#include <mpfr.h>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace oracle {

namespace {

constexpr mpfr_prec_t kPrec = 256;

}  // namespace

double gamma_mpfr(double x) {
  mpfr_t v;
  mpfr_init2(v, kPrec);
  mpfr_set_d(v, x, MPFR_RNDN);
  mpfr_gamma(v, v, MPFR_RNDN);
  const double out = mpfr_get_d(v, MPFR_RNDN);
  mpfr_clear(v);
  return out;
}

double log_gamma_mpfr(double x) {
  mpfr_t v;
  mpfr_init2(v, kPrec);
  mpfr_set_d(v, x, MPFR_RNDN);
  int sign = 0;
  mpfr_lgamma(v, &sign, v, MPFR_RNDN);
  const double out = mpfr_get_d(v, MPFR_RNDN);
  mpfr_clear(v);
  return out;
}

double mlf_half_mpfr(double t) {
  mpfr_t a, b;
  mpfr_init2(a, kPrec);
  mpfr_init2(b, kPrec);
  mpfr_set_d(a, t, MPFR_RNDN);
  mpfr_sqr(a, a, MPFR_RNDN);
  mpfr_exp(a, a, MPFR_RNDN);  // exp(t^2)
  mpfr_set_d(b, -t, MPFR_RNDN);
  mpfr_erfc(b, b, MPFR_RNDN);  // erfc(-t)
  mpfr_mul(a, a, b, MPFR_RNDN);
  const double out = mpfr_get_d(a, MPFR_RNDN);
  mpfr_clear(a);
  mpfr_clear(b);
  return out;
}

double mlf_mpfr(double sigma, double x) {
  // Plain series sum at high precision; the term count is generous enough
  // for every argument the tests use.
  mpfr_t sum, term, xx, arg;
  mpfr_init2(sum, kPrec);
  mpfr_init2(term, kPrec);
  mpfr_init2(xx, kPrec);
  mpfr_init2(arg, kPrec);
  mpfr_set_d(sum, 0.0, MPFR_RNDN);
  mpfr_set_d(xx, 1.0, MPFR_RNDN);  // x^b
  for (int b = 0; b < 20000; ++b) {
    mpfr_set_d(arg, sigma * b + 1.0, MPFR_RNDN);
    mpfr_gamma(arg, arg, MPFR_RNDN);
    mpfr_div(term, xx, arg, MPFR_RNDN);
    mpfr_add(sum, sum, term, MPFR_RNDN);
    mpfr_mul_d(xx, xx, x, MPFR_RNDN);
    if (b > 4 && mpfr_get_exp(term) < mpfr_get_exp(sum) - 200) break;
  }
  const double out = mpfr_get_d(sum, MPFR_RNDN);
  mpfr_clear(sum);
  mpfr_clear(term);
  mpfr_clear(xx);
  mpfr_clear(arg);
  return out;
}

namespace {

// Direct double-precision series through libm's lgamma; independent of the
// library's branching and of MPFR (which would be too slow for a 1e6-point
// scan). Adequate for the small positive arguments the M oracle sees.
double mlf_series_libm(double sigma, double x) {
  double sum = 1.0;
  for (int b = 1; b < 40000; ++b) {
    const double term = std::exp(b * std::log(x) - ::lgamma(b * sigma + 1.0));
    sum += term;
    if (b > 4 && term < 1e-18 * sum) break;
  }
  return sum;
}

}  // namespace

double m_constant_brute(double beta, double theta, double span, std::size_t points) {
  double best = 0.0;
  for (std::size_t i = 0; i <= points; ++i) {
    const double u = span * static_cast<double>(i) / static_cast<double>(points);
    if (u == 0.0) continue;
    const double ub = std::pow(u, beta);
    const double e = mlf_series_libm(beta, theta * ub);
    if (!std::isfinite(e)) continue;
    best = std::max(best, ub / e);
  }
  return best;
}

std::array<double, 2> singular_values_2x2(const fts::Matrix& m) {
  if (m.rows() != 2 || m.cols() != 2) {
    throw std::invalid_argument("singular_values_2x2: expects a 2x2 matrix");
  }
  const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  const double tr = a * a + b * b + c * c + d * d;
  const double det = a * d - b * c;
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det * det));
  return {std::sqrt((tr + disc) / 2.0), std::sqrt(std::max(0.0, (tr - disc) / 2.0))};
}

double spectral_norm_svd(const fts::Matrix& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(static_cast<long>(i), static_cast<long>(j)) = a(i, j);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace oracle
