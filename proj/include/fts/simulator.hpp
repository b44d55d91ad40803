#ifndef FTS_SIMULATOR_HPP
#define FTS_SIMULATOR_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fts/grid.hpp"
#include "fts/system.hpp"

namespace fts {

struct SchemeInfo {
  double step = 0.0;
  int corrector_iters = 1;
  std::size_t forward_steps = 0;
};

/// Discrete solution on [t0 - g_max, t_end]; the history segment carries nu
/// sampled at the grid times.
struct Trajectory {
  GridFunction states;
  double sup_norm = 0.0;  ///< max Euclidean norm over [t0, t_end]
  bool blew_up = false;
  double blow_up_time = 0.0;
  SchemeInfo scheme;

  const Grid& grid() const { return *states.grid; }
};

/// Fractional Adams-Bashforth-Moulton (predictor-corrector) integrator with
/// full memory: product-rectangle prediction, product-trapezoidal
/// correction, delayed states by linear interpolation (reading nu when
/// t - g(t) <= t0). Non-finite states truncate the run and set the blow-up
/// flag rather than throwing.
///
/// The memory sums run through the deterministic blocked kernel, so results
/// are identical for any OpenMP thread count.
Trajectory integrate(const SystemSpec& spec, double step, int corrector_iters = 1);

/// Reference implementation using the naive summation order; kept for tests
/// and benchmarks.
Trajectory integrate_serial(const SystemSpec& spec, double step, int corrector_iters = 1);

/// Exact solution for error measurement in convergence studies.
using AnalyticSolution = std::function<void(double t, std::span<double> out)>;

struct ConvergenceRow {
  double step = 0.0;
  double max_error = 0.0;
  double order = 0.0;  ///< empirical order vs the previous row; 0 for the first
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  double final_order = 0.0;  ///< order estimate from the finest step pair
};

/// Per-step max-norm errors against an analytic solution, or against a
/// Richardson reference (the finest step halved) when none is supplied.
/// Steps must be strictly decreasing with at least three entries.
ConvergenceStudy convergence_study(const SystemSpec& spec,
                                   std::span<const double> steps,
                                   const std::optional<AnalyticSolution>& analytic,
                                   int corrector_iters = 1);

struct EnvelopeRun {
  std::size_t index = 0;
  std::string disturbance;  ///< "extreme(+e_i)", "extreme(-e_i)" or "fourier"
  double sup_norm = 0.0;
  bool blew_up = false;
};

struct EnvelopeReport {
  std::vector<EnvelopeRun> runs;
  double max_sup_norm = 0.0;
  bool all_within_eps2 = true;
  std::size_t violations = 0;
};

/// Randomized probing of the "for all d, for all nu" quantifiers: `samples`
/// integrations under boundary-scaled disturbances (the first runs take the
/// constant extremes +-rho e_i, the rest random Fourier directions on the
/// rho sphere) with randomized histories of sup norm eps1. Runs execute in
/// parallel and merge by run index.
EnvelopeReport disturbance_envelope_run(const SystemSpec& spec, const FtsQuery& query,
                                        std::size_t samples, std::uint64_t seed,
                                        double step, int corrector_iters = 1);

}  // namespace fts

#endif  // FTS_SIMULATOR_HPP
