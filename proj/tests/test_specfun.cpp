#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "fts/specfun.hpp"
#include "oracles.hpp"

using fts::MlfParams;
using fts::mittag_leffler;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Gamma(1.9), 30 significant digits, frozen from the arbitrary-precision
// oracle before the implementation was written.
constexpr double kGamma19 = 0.961765831907387419407574802125;

}  // namespace

TEST_CASE("gamma: classical values") {
  CHECK(rel_err(fts::gamma(1.0), 1.0) < 1e-13);
  CHECK(rel_err(fts::gamma(0.5), 1.7724538509055160273) < 1e-13);
  CHECK(rel_err(fts::gamma(2.0), 1.0) < 1e-13);
  CHECK(rel_err(fts::gamma(5.0), 24.0) < 1e-13);
}

TEST_CASE("gamma: frozen high-precision value at 1.9") {
  CHECK(rel_err(fts::gamma(1.9), kGamma19) < 1e-12);
  CHECK(rel_err(fts::gamma(1.9), oracle::gamma_mpfr(1.9)) < 1e-12);
}

TEST_CASE("gamma: random arguments against the arbitrary-precision oracle") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> small(1e-3, 1.0);
  std::uniform_real_distribution<double> mid(1.0, 30.0);
  std::uniform_real_distribution<double> large(30.0, 170.0);
  for (int i = 0; i < 300; ++i) {
    for (double x : {small(rng), mid(rng), large(rng)}) {
      CAPTURE(x);
      CHECK(rel_err(fts::gamma(x), oracle::gamma_mpfr(x)) < 1e-12);
    }
  }
}

TEST_CASE("log_gamma agrees with the oracle over the series range") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(0.5, 500.0);
  for (int i = 0; i < 300; ++i) {
    const double x = dist(rng);
    CAPTURE(x);
    CHECK(std::abs(fts::log_gamma(x) - oracle::log_gamma_mpfr(x)) <
          1e-13 * std::max(1.0, std::abs(oracle::log_gamma_mpfr(x))));
  }
}

TEST_CASE("gamma: domain and overflow errors") {
  CHECK_THROWS_AS(fts::gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(fts::gamma(-1.5), std::domain_error);
  CHECK_THROWS_AS(fts::gamma(180.0), std::overflow_error);
}

TEST_CASE("MlfParams validation") {
  CHECK_THROWS_AS(MlfParams{0.0}.validate(), std::invalid_argument);
  CHECK_THROWS_AS(MlfParams{1.2}.validate(), std::invalid_argument);
  CHECK_THROWS_AS((MlfParams{0.5, 0.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((MlfParams{0.5, 1e-3}).validate(), std::invalid_argument);
  CHECK_NOTHROW((MlfParams{0.5, 1e-10}).validate());
}

TEST_CASE("mittag_leffler: E_sigma(0) = 1 exactly") {
  for (double sigma : {0.05, 0.2, 0.5, 0.7, 0.9, 1.0}) {
    CHECK(mittag_leffler(sigma, 0.0) == 1.0);
  }
}

TEST_CASE("mittag_leffler: sigma = 1 degenerates to exp") {
  CHECK(rel_err(mittag_leffler(1.0, 1.0), std::exp(1.0)) < 1e-15);
  for (int i = 0; i <= 100; ++i) {
    const double t = -1.0 + 51.0 * static_cast<double>(i) / 100.0;
    CHECK(rel_err(mittag_leffler(1.0, t), std::exp(t)) <= 1e-12);
  }
}

TEST_CASE("mittag_leffler: E_{1/2} matches the erfc identity oracle") {
  // E_{1/2}(t) = exp(t^2) erfc(-t); frozen spot value at t = 2 plus an
  // oracle scan over [0, 5].
  CHECK(rel_err(mittag_leffler(0.5, 2.0), 108.9409043899779724123554338248) < 1e-11);
  for (int i = 0; i <= 50; ++i) {
    const double t = 5.0 * static_cast<double>(i) / 50.0;
    CAPTURE(t);
    CHECK(rel_err(mittag_leffler(0.5, t), oracle::mlf_half_mpfr(t)) < 1e-10);
  }
}

TEST_CASE("mittag_leffler: frozen high-precision values on both branches") {
  struct Case {
    double sigma, t, want;
  };
  // Computed with an independent arbitrary-precision series (cross-checked
  // against the erfc identity and the asymptotic form where applicable).
  const Case cases[] = {
      {0.35, 2.0, 4005.8321859595293808},
      {0.99, 30.0, 30802754932816.167634},
      {0.3, 5.0, 2.2491502775547118727e+93},
      {0.5, 20.0, 1.0442939379528287901e+174},
      {0.7, 15.0, 8.8671406614324431567e+20},
      {0.9, 50.0, 3.8292068545927546561e+33},
      {0.9, -1.0, 0.37606602142464188118},
      {0.5, -1.0, 0.42758357615580700441},
      {0.2, -0.75, 0.54405712458464808732},
      {0.5, 5.0, 144009798674.66104041},
      {0.5, 0.37, 1.6044883512208633691},
  };
  for (const auto& c : cases) {
    CAPTURE(c.sigma);
    CAPTURE(c.t);
    CHECK(rel_err(mittag_leffler(c.sigma, c.t), c.want) < 1e-11);
  }
}

TEST_CASE("mittag_leffler: monotone increasing on the positive axis") {
  std::mt19937_64 rng(7);
  for (double sigma : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
    // Log-spaced points up to 1e3, capped where exp(t^{1/sigma}) still
    // fits in a double.
    const double t_cap = std::min(1e3, std::pow(690.0, sigma));
    double prev = mittag_leffler(sigma, 0.0);
    for (int i = 0; i <= 60; ++i) {
      const double t = t_cap * std::pow(10.0, -6.0 + 6.0 * i / 60.0);
      const double v = mittag_leffler(sigma, t);
      CAPTURE(sigma);
      CAPTURE(t);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("mittag_leffler: Lemma-style upper bound on randomized triples") {
  std::mt19937_64 rng(20240901);
  std::uniform_real_distribution<double> sig_dist(1e-3, 1.0 - 1e-12);
  std::uniform_real_distribution<double> theta_dist(1e-6, 20.0);
  std::uniform_real_distribution<double> t_dist(0.0, 100.0);
  for (int i = 0; i < 2000; ++i) {
    const double sigma = sig_dist(rng);
    const double theta = theta_dist(rng);
    const double t = t_dist(rng);
    const double bound = fts::gamma(sigma + 1.0) / theta * (1.0 + 1e-10);
    double ratio;
    try {
      ratio = std::pow(t, sigma) / mittag_leffler(sigma, theta * std::pow(t, sigma));
    } catch (const std::overflow_error&) {
      continue;  // E_sigma overflowed; the ratio is far below the bound
    }
    CAPTURE(sigma);
    CAPTURE(theta);
    CAPTURE(t);
    CHECK(ratio <= bound);
  }
}

TEST_CASE("mittag_leffler: branch consistency in the crossover window") {
  // Mandatory self-test: both evaluation branches must agree within
  // 10 * rel_tol where they overlap.
  const double rel_tol = 1e-12;
  for (double sigma : {0.2, 0.35, 0.5, 0.65, 0.8, 0.95}) {
    for (double y : {30.5, 33.0, 36.0, 40.0, 44.0}) {
      const double t = std::pow(y, sigma);  // t^{1/sigma} = y
      const double series = fts::detail::mlf_series(sigma, t, rel_tol);
      const double asym = fts::detail::mlf_asymptotic(sigma, t, rel_tol);
      CAPTURE(sigma);
      CAPTURE(t);
      CHECK(rel_err(series, asym) < 10.0 * rel_tol);
    }
  }
}

TEST_CASE("mittag_leffler: domain and overflow errors") {
  CHECK_THROWS_AS(mittag_leffler(0.5, -1.5), std::domain_error);
  CHECK_THROWS_AS(mittag_leffler(0.5, std::nan("")), std::domain_error);
  CHECK_THROWS_AS(mittag_leffler(0.5, 1e6), std::overflow_error);
  CHECK_THROWS_AS(mittag_leffler(1.0, 1e6), std::overflow_error);
}

TEST_CASE("psi eigenfunction residual: discretization error only") {
  CHECK(fts::psi_eigenfunction_residual(0.9, 1.0, 0.0, 1.0, 512) <= 1e-6);
  CHECK(fts::psi_eigenfunction_residual(0.5, 2.0, 0.0, 0.5, 512) <= 1e-6);
  CHECK(fts::psi_eigenfunction_residual(0.7, -1.0, 1.0, 2.0, 512) <= 1e-6);
}

TEST_CASE("psi eigenfunction residual: precondition errors") {
  CHECK_THROWS_AS(fts::psi_eigenfunction_residual(0.9, 0.0, 0.0, 1.0, 512),
                  std::invalid_argument);
  CHECK_THROWS_AS(fts::psi_eigenfunction_residual(0.9, 1.0, 1.0, 1.0, 512),
                  std::invalid_argument);
  CHECK_THROWS_AS(fts::psi_eigenfunction_residual(0.9, 1.0, 0.0, 1.0, 32),
                  std::invalid_argument);
}
