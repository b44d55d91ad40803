#ifndef FTS_FIXEDPOINT_HPP
#define FTS_FIXEDPOINT_HPP

#include <cstddef>
#include <memory>
#include <vector>

#include "fts/grid.hpp"
#include "fts/system.hpp"

namespace fts {

/// Weight of the Bielecki-type metric: h(s) = 1 on [t0 - g, t0] and
/// h(s) = E_beta(theta (s - t0)^beta) on [t0, T]; nondecreasing, h(t0) = 1
/// from both branches.
struct WeightFunction {
  double beta = 0.0;
  double theta = 0.0;  ///< a0 + a1 + eta
  std::shared_ptr<const Grid> grid;
  std::vector<double> values;  ///< h at each grid time

  static WeightFunction make(double beta, double theta,
                             std::shared_ptr<const Grid> grid);
};

/// Generalized weighted metric on grid functions:
/// varpi(x1, x2) = sup_i ||x1(t_i) - x2(t_i)|| / h(t_i).
/// Finite for every pair of grid functions (the infinite case of the
/// generalized metric cannot occur on a grid).
double weighted_distance(const GridFunction& x1, const GridFunction& x2,
                         const WeightFunction& w);

/// The solution operator V: (Vy)(t) = nu(t) on the history segment and
///   nu(t0) + (1/Gamma(beta)) int_{t0}^t (t-s)^{beta-1}
///            [A0 y(s) + A1 y(s-g(s)) + A2 d(s) + f(s, y, y_del, d)] ds
/// on [t0, T], with the same product-trapezoidal quadrature family as the
/// simulator. Output grid points are independent; apply_v parallelizes over
/// them and is bitwise identical to apply_v_serial.
GridFunction apply_v(const SystemSpec& spec, const GridFunction& y);
GridFunction apply_v_serial(const SystemSpec& spec, const GridFunction& y);

/// Proof anchor y0: nu on the history segment, the constant nu(t0) forward.
GridFunction picard_anchor(const SystemSpec& spec, std::shared_ptr<const Grid> grid);

struct PicardLogEntry {
  std::size_t iteration = 0;
  double distance = 0.0;  ///< varpi(y_{k+1}, y_k)
  double ratio = 0.0;     ///< distance_k / distance_{k-1}; 0 for the first entry
};

struct PicardResult {
  GridFunction limit;
  std::vector<PicardLogEntry> log;
  bool converged = false;
  double contraction_bound = 0.0;  ///< (a0+a1) / (a0+a1+eta)
  WeightFunction weight;
};

/// Picard iteration y <- Vy from the proof anchor, in the eta-weighted
/// metric, until the step distance drops below tol or max_iters is
/// exhausted. Non-convergence is reported, not thrown.
PicardResult picard_iterate(const SystemSpec& spec, double eta,
                            std::shared_ptr<const Grid> grid,
                            std::size_t max_iters, double tol);

/// Margins of the a-priori fixed-point bounds:
/// varpi(x*, y0) <= r1 eps1 + r2 rho and the pointwise consequence
/// ||x*(t)|| <= ||y0(t)|| + (r1 eps1 + r2 rho) h(T).
struct AprioriReport {
  PicardResult picard;
  double distance_to_anchor = 0.0;
  double distance_bound = 0.0;  ///< r1 eps1 + r2 rho
  double distance_margin = 0.0;
  bool distance_ok = false;
  double max_pointwise_excess = 0.0;  ///< max over [t0,T] of ||x*|| - allowed
  bool pointwise_ok = false;
};

AprioriReport verify_a_priori_bound(const SystemSpec& spec, const FtsQuery& query,
                                    std::shared_ptr<const Grid> grid,
                                    std::size_t max_iters = 400, double tol = 1e-10);

}  // namespace fts

#endif  // FTS_FIXEDPOINT_HPP
