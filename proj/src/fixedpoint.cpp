#include "fts/fixedpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fts/caputo.hpp"
#include "fts/certificate.hpp"
#include "fts/specfun.hpp"

namespace fts {

namespace {

double euclidean(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

void check_shared_grid(const GridFunction& x1, const GridFunction& x2) {
  if (x1.grid != x2.grid || x1.dim != x2.dim) {
    if (!x1.grid || !x2.grid || x1.grid->times != x2.grid->times || x1.dim != x2.dim) {
      throw std::invalid_argument("weighted_distance: grid functions must share a grid");
    }
  }
}

template <bool Parallel>
GridFunction apply_v_impl(const SystemSpec& spec, const GridFunction& y) {
  validate_dimensions(spec);
  if (!y.grid) throw std::invalid_argument("apply_v: grid function has no grid");
  const Grid& grid = *y.grid;
  const std::size_t n = spec.state_dim();
  if (y.dim != n) throw std::invalid_argument("apply_v: dimension mismatch");

  const std::size_t i0 = grid.start_index();
  const std::size_t steps = grid.forward_steps;
  GridFunction out = GridFunction::zeros(y.grid, n);

  // History segment: (Vy)(t) = nu(t) regardless of y.
  for (std::size_t i = 0; i <= i0; ++i) {
    spec.nu(grid.times[i], out.at(i));
  }

  // F_j = A0 y + A1 y(s - g(s)) + A2 d + f, from the *given* y; every
  // output point then only reads this table.
  const std::size_t p = spec.disturbance_dim();
  std::vector<double> f_vals((steps + 1) * n);
  {
    std::vector<double> dbuf(p), fbuf(n), x_del(n);
    for (std::size_t j = 0; j <= steps; ++j) {
      const double t = grid.times[i0 + j];
      const double tau = t - spec.g(t);
      if (tau < grid.t0 - spec.g_max - 1e-9) {
        throw std::invalid_argument("apply_v: delay points before t0 - g_max");
      }
      interpolate(y, tau, x_del);
      double* out_j = f_vals.data() + j * n;
      std::span<double> out_span{out_j, n};
      std::fill(out_span.begin(), out_span.end(), 0.0);
      spec.d(t, dbuf);
      spec.a0.accumulate_product(y.at(i0 + j), out_span);
      spec.a1.accumulate_product(x_del, out_span);
      spec.a2.accumulate_product(dbuf, out_span);
      spec.f(t, y.at(i0 + j), x_del, dbuf, fbuf);
      for (std::size_t c = 0; c < n; ++c) out_j[c] += fbuf[c];
    }
  }

  const CaputoWeights weights = CaputoWeights::make(spec.beta, grid.step, steps);
  const auto x0 = out.at(i0);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (Parallel)
#endif
  for (long long mi = 1; mi <= static_cast<long long>(steps); ++mi) {
    const auto m = static_cast<std::size_t>(mi);
    auto target = out.at(i0 + m);
    // Product-trapezoidal sum over j = 0 .. m, same inner order in both the
    // serial and parallel builds.
    for (std::size_t c = 0; c < n; ++c) target[c] = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double w =
          j == 0 ? weights.corrector_first(m) : weights.corrector(m - j);
      const double* fj = f_vals.data() + j * n;
      for (std::size_t c = 0; c < n; ++c) target[c] += w * fj[c];
    }
    const double* fm = f_vals.data() + m * n;
    for (std::size_t c = 0; c < n; ++c) {
      target[c] = x0[c] + weights.corrector_scale * (target[c] + fm[c]);
    }
  }

  for (double v : out.values) {
    if (!std::isfinite(v)) {
      throw std::runtime_error("apply_v: non-finite value in the operator image");
    }
  }
  return out;
}

}  // namespace

WeightFunction WeightFunction::make(double beta, double theta,
                                    std::shared_ptr<const Grid> grid) {
  if (!(theta > 0.0)) {
    throw std::invalid_argument("WeightFunction: theta must be positive");
  }
  WeightFunction w;
  w.beta = beta;
  w.theta = theta;
  w.values.resize(grid->size());
  const MlfParams params{beta};
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double t = grid->times[i];
    w.values[i] = t <= grid->t0
                      ? 1.0
                      : mittag_leffler(params, theta * std::pow(t - grid->t0, beta));
  }
  w.grid = std::move(grid);
  return w;
}

double weighted_distance(const GridFunction& x1, const GridFunction& x2,
                         const WeightFunction& w) {
  check_shared_grid(x1, x2);
  if (w.values.size() != x1.grid->size()) {
    throw std::invalid_argument("weighted_distance: weight does not match the grid");
  }
  double sup = 0.0;
  const std::size_t n = x1.dim;
  for (std::size_t i = 0; i < x1.grid->size(); ++i) {
    const auto a = x1.at(i);
    const auto b = x2.at(i);
    double acc = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      const double d = a[c] - b[c];
      acc += d * d;
    }
    sup = std::max(sup, std::sqrt(acc) / w.values[i]);
  }
  return sup;
}

GridFunction apply_v(const SystemSpec& spec, const GridFunction& y) {
  return apply_v_impl<true>(spec, y);
}

GridFunction apply_v_serial(const SystemSpec& spec, const GridFunction& y) {
  return apply_v_impl<false>(spec, y);
}

GridFunction picard_anchor(const SystemSpec& spec, std::shared_ptr<const Grid> grid) {
  const std::size_t n = spec.state_dim();
  GridFunction y0 = GridFunction::zeros(grid, n);
  const std::size_t i0 = grid->start_index();
  for (std::size_t i = 0; i <= i0; ++i) {
    spec.nu(grid->times[i], y0.at(i));
  }
  const auto anchor = y0.at(i0);
  for (std::size_t i = i0 + 1; i < grid->size(); ++i) {
    std::copy(anchor.begin(), anchor.end(), y0.at(i).begin());
  }
  return y0;
}

PicardResult picard_iterate(const SystemSpec& spec, double eta,
                            std::shared_ptr<const Grid> grid,
                            std::size_t max_iters, double tol) {
  if (max_iters < 2) {
    throw std::invalid_argument("picard_iterate: max_iters must be at least 2");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("picard_iterate: tol must be positive");
  }
  if (!(eta > 0.0)) {
    throw std::invalid_argument("picard_iterate: eta must be positive");
  }

  const Coefficients coeff = compute_coefficients(spec);
  const double theta = coeff.sum01() + eta;

  PicardResult result;
  result.weight = WeightFunction::make(spec.beta, theta, grid);
  result.contraction_bound = coeff.sum01() / theta;

  GridFunction y = picard_anchor(spec, grid);
  double prev_distance = -1.0;
  for (std::size_t k = 0; k < max_iters; ++k) {
    GridFunction next = apply_v(spec, y);
    const double dist = weighted_distance(next, y, result.weight);
    PicardLogEntry entry{k, dist, 0.0};
    if (prev_distance > 0.0) entry.ratio = dist / prev_distance;
    result.log.push_back(entry);
    y = std::move(next);
    if (dist <= tol) {
      result.converged = true;
      break;
    }
    prev_distance = dist;
  }
  result.limit = std::move(y);
  return result;
}

AprioriReport verify_a_priori_bound(const SystemSpec& spec, const FtsQuery& query,
                                    std::shared_ptr<const Grid> grid,
                                    std::size_t max_iters, double tol) {
  validate_query(query, spec);
  const double eta = query.has_search() ? 1.0 : query.fixed_eta();

  AprioriReport report;
  report.picard = picard_iterate(spec, eta, grid, max_iters, tol);

  const Certificate cert = compute_certificate(spec, query, eta);

  const GridFunction y0 = picard_anchor(spec, grid);
  report.distance_to_anchor =
      weighted_distance(report.picard.limit, y0, report.picard.weight);
  report.distance_bound = cert.r1 * query.eps1 + cert.r2 * query.rho;
  report.distance_margin = report.distance_bound - report.distance_to_anchor;
  report.distance_ok = report.distance_to_anchor <= report.distance_bound + 1e-6;

  // Pointwise: ||x*(t)|| <= ||y0(t)|| + (r1 eps1 + r2 rho) h(T) on [t0, T].
  const double h_end = report.picard.weight.values.back();
  const double allowance = report.distance_bound * h_end;
  double max_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = grid->start_index(); i < grid->size(); ++i) {
    const double lhs = report.picard.limit.norm_at(i);
    const double rhs = euclidean(y0.at(i)) + allowance;
    max_excess = std::max(max_excess, lhs - rhs);
  }
  report.max_pointwise_excess = max_excess;
  report.pointwise_ok = max_excess <= 1e-6;
  return report;
}

}  // namespace fts
