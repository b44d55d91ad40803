// Native builders for the systems the test suites keep coming back to: the
// two shipped two-state examples, the scalar eigenfunction benchmark and the
// zero system.
#ifndef FTS_TESTS_FIXTURES_HPP
#define FTS_TESTS_FIXTURES_HPP

#include "fts/functions.hpp"
#include "fts/system.hpp"

namespace fixtures {

inline fts::SystemSpec example1_spec() {
  using fts::families::SinTerm;
  fts::SystemSpec spec;
  spec.beta = 0.9;
  spec.t0 = 0.0;
  spec.t_end = 0.385;
  spec.a0 = fts::Matrix::from_rows({{0.0, -2.0}, {1.0, 0.0}});
  spec.a1 = fts::Matrix::from_rows({{0.0, 3.0}, {0.0, 4.0}});
  spec.a2 = fts::Matrix::from_rows({{0.0, -0.8}, {1.0, 0.0}});
  spec.kappa = fts::families::constant_time(0.01);
  spec.f = fts::families::sin_componentwise(
      0.01, {SinTerm{SinTerm::Source::state, 1}, SinTerm{SinTerm::Source::delayed, 0}});
  spec.g = fts::families::cos2sin2_delay(0.4);
  spec.g_max = fts::families::cos2sin2_delay_cap(0.4);
  spec.nu = fts::families::constant_vector({0.0, 0.09});
  spec.d = fts::families::sin_cos_boundary(0.1);
  spec.rho = 0.1;
  return spec;
}

inline fts::FtsQuery example1_query() {
  fts::FtsQuery q;
  q.eps1 = 0.1;
  q.eps2 = 50.0;
  q.rho = 0.1;
  q.horizon = 0.385;
  q.eta = 1.0;
  return q;
}

inline fts::SystemSpec example2_spec() {
  using fts::families::SinTerm;
  fts::SystemSpec spec;
  spec.beta = 0.6;
  spec.t0 = 0.0;
  spec.t_end = 0.49;
  spec.a0 = fts::Matrix::from_rows({{0.0, -1.0}, {2.0, 0.0}});
  spec.a1 = fts::Matrix::from_rows({{0.5, 0.0}, {0.0, 1.0}});
  spec.a2 = fts::Matrix::from_rows({{0.0, 0.4}, {-1.0, 0.0}});
  spec.kappa = fts::families::constant_time(0.01);
  spec.f = fts::families::sin_componentwise(
      0.01, {SinTerm{SinTerm::Source::delayed, 1}, SinTerm{SinTerm::Source::state, 0}});
  spec.g = fts::families::cos2sin2_delay(0.4);
  spec.g_max = fts::families::cos2sin2_delay_cap(0.4);
  spec.nu = fts::families::constant_vector({0.06, 0.07});
  spec.d = fts::families::sin_cos_boundary(0.1);
  spec.rho = 0.1;
  return spec;
}

inline fts::FtsQuery example2_query() {
  fts::FtsQuery q;
  q.eps1 = 0.1;
  q.eps2 = 100.0;
  q.rho = 0.1;
  q.horizon = 0.49;
  q.eta = 1.0;
  return q;
}

/// Scalar benchmark D^beta x = theta x with x(0) = 1; the exact solution is
/// E_beta(theta t^beta).
inline fts::SystemSpec scalar_mlf_spec(double beta, double theta, double t_end = 1.0) {
  fts::SystemSpec spec;
  spec.beta = beta;
  spec.t0 = 0.0;
  spec.t_end = t_end;
  spec.a0 = fts::Matrix::from_rows({{theta}});
  spec.a1 = fts::Matrix::from_rows({{0.0}});
  spec.a2 = fts::Matrix::from_rows({{0.0}});
  spec.kappa = fts::families::constant_time(0.0);
  spec.f = fts::families::zero_nonlinearity();
  spec.g = fts::families::constant_time(0.0);
  spec.g_max = 0.0;
  spec.nu = fts::families::constant_vector({1.0});
  spec.d = fts::families::zero_vector();
  spec.rho = 0.0;
  return spec;
}

inline fts::SystemSpec zero_spec(double t_end = 1.0) {
  fts::SystemSpec spec;
  spec.beta = 0.8;
  spec.t0 = 0.0;
  spec.t_end = t_end;
  spec.a0 = fts::Matrix(2, 2);
  spec.a1 = fts::Matrix(2, 2);
  spec.a2 = fts::Matrix(2, 2);
  spec.kappa = fts::families::constant_time(0.0);
  spec.f = fts::families::zero_nonlinearity();
  spec.g = fts::families::constant_time(0.05);
  spec.g_max = 0.05;
  spec.nu = fts::families::constant_vector({0.0, 0.0});
  spec.d = fts::families::zero_vector();
  spec.rho = 0.0;
  return spec;
}

}  // namespace fixtures

#endif  // FTS_TESTS_FIXTURES_HPP
