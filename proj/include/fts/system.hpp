#ifndef FTS_SYSTEM_HPP
#define FTS_SYSTEM_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fts/linalg.hpp"

namespace fts {

/// Nonlinearity f(t, x, x_delayed, d) -> out. Must vanish at the origin and
/// obey the Lipschitz envelope kappa in all three state arguments.
using StateFn = std::function<void(double t, std::span<const double> x,
                                   std::span<const double> x_delayed,
                                   std::span<const double> d, std::span<double> out)>;

/// Scalar function of time (kappa, g).
using TimeFn = std::function<double(double)>;

/// Vector-valued function of time writing into a caller span (nu, d).
using VectorFn = std::function<void(double, std::span<double>)>;

/// Full problem instance for the delayed fractional-order system
///   D^beta x(t) = A0 x(t) + A1 x(t - g(t)) + A2 d(t) + f(t, x, x_del, d),
/// with history x(s) = nu(s) on [t0 - g_max, t0].
struct SystemSpec {
  double beta = 0.9;   ///< fractional order, 0 < beta <= 1
  double t0 = 0.0;
  double t_end = 1.0;

  Matrix a0;           ///< n x n
  Matrix a1;           ///< n x n
  Matrix a2;           ///< n x p

  TimeFn kappa;        ///< Lipschitz envelope of f, >= 0
  StateFn f;           ///< nonlinearity; f(t,0,0,0) = 0
  TimeFn g;            ///< delay, 0 <= g(t) <= g_max
  double g_max = 0.0;

  VectorFn nu;         ///< initial history on [t0 - g_max, t0]
  VectorFn d;          ///< disturbance, d(t)^T d(t) <= rho^2
  double rho = 0.0;

  std::size_t state_dim() const { return a0.rows(); }
  std::size_t disturbance_dim() const { return a2.cols(); }
};

/// Range and resolution of an eta search.
struct EtaSearch {
  double lo = 0.1;
  double hi = 10.0;
  std::size_t points = 64;
};

/// The stability question: does every trajectory with ||nu|| <= eps1 stay
/// inside the eps2 ball on [t0, T], for every disturbance in the rho ball?
struct FtsQuery {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double rho = 0.0;
  double horizon = 0.0;                       ///< T; must match the system horizon
  std::variant<double, EtaSearch> eta = 1.0;  ///< fixed value or search directive

  bool has_search() const { return std::holds_alternative<EtaSearch>(eta); }
  double fixed_eta() const { return std::get<double>(eta); }
};

struct CheckOptions {
  std::size_t grid_points = 256;   ///< time samples for the pointwise checks
  std::size_t probe_points = 128;  ///< randomized Lipschitz probes
  std::uint64_t seed = 20240901;
};

/// Structural validation (dimensions, ranges). Throws std::invalid_argument
/// on the first violation.
void validate_dimensions(const SystemSpec& spec);

/// Sampled checks of the standing hypotheses: the Lipschitz envelope on
/// randomized probe points, the disturbance bound and f(t,0,0,0) = 0 on a
/// time grid, and 0 <= g <= g_max. Returns human-readable violations
/// (empty when everything holds).
std::vector<std::string> check_hypotheses(const SystemSpec& spec,
                                          const CheckOptions& options = {});

/// validate_dimensions + check_hypotheses; throws on any violation.
void validate_system(const SystemSpec& spec, const CheckOptions& options = {});

/// Query validation (0 < eps1 < eps2, eta > 0, horizon consistency).
void validate_query(const FtsQuery& query, const SystemSpec& spec);

}  // namespace fts

#endif  // FTS_SYSTEM_HPP
