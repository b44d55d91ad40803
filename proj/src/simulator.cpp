#include "fts/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "fts/caputo.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fts {

namespace {

double euclidean(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

// F(t, x, x_del, d) = A0 x + A1 x_del + A2 d(t) + f(t, x, x_del, d).
struct Rhs {
  const SystemSpec& spec;
  std::vector<double> dbuf;
  std::vector<double> fbuf;

  explicit Rhs(const SystemSpec& s)
      : spec(s), dbuf(s.disturbance_dim()), fbuf(s.state_dim()) {}

  void operator()(double t, std::span<const double> x, std::span<const double> x_del,
                  std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    spec.d(t, dbuf);
    spec.a0.accumulate_product(x, out);
    spec.a1.accumulate_product(x_del, out);
    spec.a2.accumulate_product(dbuf, out);
    spec.f(t, x, x_del, dbuf, fbuf);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += fbuf[c];
  }
};

// Delayed state at tau = t - g(t): exact nu for tau <= t0, linear
// interpolation on the computed part of the grid otherwise.
void delayed_state(const SystemSpec& spec, const GridFunction& states,
                   std::size_t known_upto, double t, std::span<double> out) {
  const double tau = t - spec.g(t);
  const Grid& grid = *states.grid;
  if (tau < grid.t0 - spec.g_max - 1e-9 * std::max(1.0, std::abs(grid.t0))) {
    throw std::invalid_argument("integrate: delay points before t0 - g_max; "
                                "the spec is inconsistent");
  }
  if (tau > t + 1e-12) {
    throw std::invalid_argument("integrate: negative delay encountered");
  }
  if (tau <= grid.t0) {
    spec.nu(std::max(tau, grid.t0 - spec.g_max), out);
    return;
  }
  // Interpolate using values up to known_upto; tau <= t guarantees the
  // needed indices are available (the current target uses its latest
  // iterate).
  const std::size_t i = std::min(lower_index(grid, tau), known_upto);
  if (i >= known_upto) {
    const auto v = states.at(known_upto);
    std::copy(v.begin(), v.end(), out.begin());
    return;
  }
  const double tl = grid.times[i];
  const double tr = grid.times[i + 1];
  const double w = (tau - tl) / (tr - tl);
  const auto vl = states.at(i);
  const auto vr = states.at(i + 1);
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = (1.0 - w) * vl[c] + w * vr[c];
}

template <bool UseBlockedSum>
Trajectory integrate_impl(const SystemSpec& spec, double step, int corrector_iters) {
  validate_dimensions(spec);
  if (!(step > 0.0) || step > (spec.t_end - spec.t0) / 10.0) {
    throw std::invalid_argument("integrate: step must be positive and at most "
                                "(t_end - t0)/10");
  }
  if (corrector_iters < 1) {
    throw std::invalid_argument("integrate: at least one corrector iteration required");
  }

  const std::size_t n = spec.state_dim();
  auto grid = Grid::make(spec.t0, spec.t_end, spec.g_max, step);
  const std::size_t i0 = grid->start_index();
  const std::size_t total = grid->size();
  const std::size_t steps = grid->forward_steps;

  Trajectory traj;
  traj.states = GridFunction::zeros(grid, n);
  traj.scheme = {grid->step, corrector_iters, steps};

  // History segment from nu, x(t0) = nu(t0).
  for (std::size_t i = 0; i <= i0; ++i) {
    spec.nu(grid->times[i], traj.states.at(i));
  }

  const CaputoWeights weights = CaputoWeights::make(spec.beta, grid->step, steps);
  Rhs rhs(spec);

  // F history on the forward grid, F[m] at t0 + m h.
  std::vector<double> f_hist((steps + 1) * n, 0.0);
  std::vector<double> x_del(n), f_new(n), sum(n), x_pred(n);

  delayed_state(spec, traj.states, i0, grid->t0, x_del);
  rhs(grid->t0, traj.states.at(i0), x_del, {f_hist.data(), n});

  const auto x0 = traj.states.at(i0);
  traj.sup_norm = euclidean(x0);

  for (std::size_t m = 1; m <= steps; ++m) {
    const double t_m = grid->times[i0 + m];

    // Predictor: product-rectangle memory sum over j = 0 .. m-1.
    auto pred_weight = [&](std::size_t j) { return weights.predictor(m - j); };
    if constexpr (UseBlockedSum) {
      blocked_weighted_sum(m, n, f_hist.data(), pred_weight, sum.data());
    } else {
      serial_weighted_sum(m, n, f_hist.data(), pred_weight, sum.data());
    }
    for (std::size_t c = 0; c < n; ++c) {
      x_pred[c] = x0[c] + weights.predictor_scale * sum[c];
    }

    // Corrector memory: product-trapezoidal weights over j = 0 .. m-1.
    auto corr_weight = [&](std::size_t j) {
      return j == 0 ? weights.corrector_first(m) : weights.corrector(m - j);
    };
    if constexpr (UseBlockedSum) {
      blocked_weighted_sum(m, n, f_hist.data(), corr_weight, sum.data());
    } else {
      serial_weighted_sum(m, n, f_hist.data(), corr_weight, sum.data());
    }

    // Corrector sweeps; the delayed state tracks the latest iterate when the
    // delay falls inside the current cell.
    auto x_m = traj.states.at(i0 + m);
    std::copy(x_pred.begin(), x_pred.end(), x_m.begin());
    for (int sweep = 0; sweep < corrector_iters; ++sweep) {
      delayed_state(spec, traj.states, i0 + m, t_m, x_del);
      rhs(t_m, x_m, x_del, f_new);
      for (std::size_t c = 0; c < n; ++c) {
        x_m[c] = x0[c] + weights.corrector_scale * (sum[c] + f_new[c]);
      }
    }

    bool finite = true;
    for (double v : x_m) finite = finite && std::isfinite(v);
    if (!finite) {
      traj.blew_up = true;
      traj.blow_up_time = t_m;
      // Truncate: zero the states from the blow-up point on (flagged, never
      // clamped into the reported sup norm).
      for (std::size_t k = i0 + m; k < total; ++k) {
        auto xs = traj.states.at(k);
        std::fill(xs.begin(), xs.end(), 0.0);
      }
      traj.sup_norm = std::numeric_limits<double>::infinity();
      return traj;
    }

    // Store F at the accepted state (PECE arrangement).
    delayed_state(spec, traj.states, i0 + m, t_m, x_del);
    rhs(t_m, x_m, x_del, {f_hist.data() + m * n, n});

    traj.sup_norm = std::max(traj.sup_norm, euclidean(x_m));
  }
  return traj;
}

}  // namespace

Trajectory integrate(const SystemSpec& spec, double step, int corrector_iters) {
  return integrate_impl<true>(spec, step, corrector_iters);
}

Trajectory integrate_serial(const SystemSpec& spec, double step, int corrector_iters) {
  return integrate_impl<false>(spec, step, corrector_iters);
}

ConvergenceStudy convergence_study(const SystemSpec& spec,
                                   std::span<const double> steps,
                                   const std::optional<AnalyticSolution>& analytic,
                                   int corrector_iters) {
  if (steps.size() < 3) {
    throw std::invalid_argument("convergence_study: at least three steps required");
  }
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (!(steps[i] < steps[i - 1])) {
      throw std::invalid_argument("convergence_study: steps must be strictly decreasing");
    }
  }

  // Reference: analytic when supplied, otherwise the finest step halved.
  std::optional<Trajectory> richardson;
  if (!analytic) {
    richardson = integrate(spec, steps.back() / 2.0, corrector_iters);
  }

  ConvergenceStudy study;
  const std::size_t n = spec.state_dim();
  std::vector<double> ref(n), diff(n);
  for (double h : steps) {
    const Trajectory traj = integrate(spec, h, corrector_iters);
    if (traj.blew_up) {
      throw std::runtime_error("convergence_study: trajectory blew up at step " +
                               std::to_string(h));
    }
    const Grid& grid = traj.grid();
    double max_err = 0.0;
    for (std::size_t i = grid.start_index(); i < grid.size(); ++i) {
      const double t = grid.times[i];
      if (analytic) {
        (*analytic)(t, ref);
      } else {
        interpolate(richardson->states, t, ref);
      }
      const auto x = traj.states.at(i);
      for (std::size_t c = 0; c < n; ++c) diff[c] = x[c] - ref[c];
      max_err = std::max(max_err, euclidean(diff));
    }
    ConvergenceRow row{h, max_err, 0.0};
    if (!study.rows.empty()) {
      const auto& prev = study.rows.back();
      row.order = std::log(prev.max_error / std::max(max_err, 1e-300)) /
                  std::log(prev.step / h);
    }
    study.rows.push_back(row);
  }
  study.final_order = study.rows.back().order;
  return study;
}

namespace {

// Deterministic per-run sampling helpers for the envelope probe.

struct FourierSignal {
  // u_i(t) = c_i + sum_m (a_im cos(w_m (t-t0)) + b_im sin(w_m (t-t0)))
  std::vector<double> c, a, b, w;
  std::size_t dim = 0;
  double t0 = 0.0;

  void eval(double t, std::span<double> out) const {
    const std::size_t modes = w.size();
    for (std::size_t i = 0; i < dim; ++i) {
      double v = c[i];
      for (std::size_t m = 0; m < modes; ++m) {
        const double phase = w[m] * (t - t0);
        v += a[i * modes + m] * std::cos(phase) + b[i * modes + m] * std::sin(phase);
      }
      out[i] = v;
    }
  }

  // sup_t ||u(t)|| <= sqrt(sum_i (|c_i| + sum_m (|a_im| + |b_im|))^2)
  double sup_bound() const {
    const std::size_t modes = w.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      double s = std::abs(c[i]);
      for (std::size_t m = 0; m < modes; ++m) {
        s += std::abs(a[i * modes + m]) + std::abs(b[i * modes + m]);
      }
      acc += s * s;
    }
    return std::sqrt(acc);
  }

  static FourierSignal random(std::mt19937_64& rng, std::size_t dim, double t0,
                              double span, std::size_t modes) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> freq(0.5, 4.0);
    FourierSignal s;
    s.dim = dim;
    s.t0 = t0;
    s.c.resize(dim);
    s.a.resize(dim * modes);
    s.b.resize(dim * modes);
    s.w.resize(modes);
    for (double& v : s.c) v = unit(rng);
    for (double& v : s.a) v = unit(rng);
    for (double& v : s.b) v = unit(rng);
    for (std::size_t m = 0; m < modes; ++m) {
      s.w[m] = 2.0 * 3.14159265358979323846 * static_cast<double>(m + 1) *
               freq(rng) / std::max(span, 1e-6);
    }
    return s;
  }
};

}  // namespace

EnvelopeReport disturbance_envelope_run(const SystemSpec& spec, const FtsQuery& query,
                                        std::size_t samples, std::uint64_t seed,
                                        double step, int corrector_iters) {
  if (samples < 1) {
    throw std::invalid_argument("disturbance_envelope_run: samples must be >= 1");
  }
  validate_dimensions(spec);

  const std::size_t n = spec.state_dim();
  const std::size_t p = spec.disturbance_dim();
  const double rho = query.rho;
  const double eps1 = query.eps1;
  const double span = spec.t_end - spec.t0;

  // Run configurations are generated serially (deterministic), integrations
  // execute in parallel and merge by index.
  struct RunSetup {
    VectorFn d;
    VectorFn nu;
    std::string label;
  };
  std::vector<RunSetup> setups(samples);
  std::mt19937_64 rng(seed);

  for (std::size_t run = 0; run < samples; ++run) {
    RunSetup setup;

    // Histories: alternate between constant boundary directions and
    // Fourier signals normalized to sup norm eps1.
    if (run % 2 == 0) {
      std::normal_distribution<double> gauss(0.0, 1.0);
      std::vector<double> dir(n);
      double norm = 0.0;
      for (double& v : dir) {
        v = gauss(rng);
        norm += v * v;
      }
      norm = std::sqrt(norm);
      if (norm < 1e-12) {
        dir.assign(n, 0.0);
        dir[0] = 1.0;
        norm = 1.0;
      }
      for (double& v : dir) v *= eps1 / norm;
      setup.nu = [dir](double, std::span<double> out) {
        std::copy(dir.begin(), dir.end(), out.begin());
      };
    } else {
      FourierSignal hist = FourierSignal::random(rng, n, spec.t0 - spec.g_max,
                                                 std::max(spec.g_max, 1e-3), 2);
      const double scale = eps1 / std::max(hist.sup_bound(), 1e-12);
      setup.nu = [hist, scale](double t, std::span<double> out) {
        hist.eval(t, out);
        for (double& v : out) v *= scale;
      };
    }

    // Disturbances: constant extremes first, then Fourier directions scaled
    // pointwise onto the rho sphere.
    if (run < 2 * p) {
      const std::size_t axis = run / 2;
      const double sign = (run % 2 == 0) ? 1.0 : -1.0;
      setup.label = (sign > 0 ? "extreme(+e" : "extreme(-e") +
                    std::to_string(axis + 1) + ")";
      setup.d = [axis, sign, rho, p](double, std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
        if (axis < p) out[axis] = sign * rho;
      };
      // Consume the same amount of randomness as the Fourier branch so run
      // configurations stay aligned across sample counts.
      FourierSignal::random(rng, p, spec.t0, span, 3);
    } else {
      setup.label = "fourier";
      FourierSignal sig = FourierSignal::random(rng, p, spec.t0, span, 3);
      setup.d = [sig, rho](double t, std::span<double> out) {
        sig.eval(t, out);
        double norm = 0.0;
        for (double v : out) norm += v * v;
        norm = std::sqrt(norm);
        if (norm < 1e-12) {
          std::fill(out.begin(), out.end(), 0.0);
          out[0] = rho;
          return;
        }
        for (double& v : out) v *= rho / norm;
      };
    }
    setups[run] = std::move(setup);
  }

  EnvelopeReport report;
  report.runs.resize(samples);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long long ri = 0; ri < static_cast<long long>(samples); ++ri) {
    const auto run = static_cast<std::size_t>(ri);
    SystemSpec probe = spec;
    probe.d = setups[run].d;
    probe.nu = setups[run].nu;
    probe.rho = rho;
    const Trajectory traj = integrate(probe, step, corrector_iters);
    report.runs[run] = {run, setups[run].label, traj.sup_norm, traj.blew_up};
  }

  for (const auto& run : report.runs) {
    report.max_sup_norm = std::max(report.max_sup_norm, run.sup_norm);
    const bool ok = !run.blew_up && run.sup_norm <= query.eps2;
    if (!ok) {
      report.all_within_eps2 = false;
      ++report.violations;
    }
  }
  return report;
}

}  // namespace fts
