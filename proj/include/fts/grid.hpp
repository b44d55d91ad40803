#ifndef FTS_GRID_HPP
#define FTS_GRID_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fts {

/// Time grid shared by the simulator and the fixed-point machinery: a
/// uniform step on [t0, t_end] plus history sample points back to t0 - g_max
/// (grid aligned, with a possibly shorter first cell ending exactly at
/// t0 - g_max).
struct Grid {
  double t0 = 0.0;
  double t_end = 0.0;
  double step = 0.0;
  double g_max = 0.0;
  std::size_t history_points = 0;  ///< number of points strictly before t0
  std::size_t forward_steps = 0;   ///< number of steps on [t0, t_end]
  std::vector<double> times;       ///< strictly increasing, size() entries

  std::size_t size() const { return times.size(); }
  std::size_t start_index() const { return history_points; }
  double time_at(std::size_t i) const { return times[i]; }

  /// Requested step is shrunk (never stretched) so that it divides
  /// t_end - t0 evenly.
  static std::shared_ptr<const Grid> make(double t0, double t_end, double g_max,
                                          double step);
};

/// Vector-valued function sampled on a Grid; the working representation of
/// elements of C([t0 - g_max, t_end], R^n).
struct GridFunction {
  std::shared_ptr<const Grid> grid;
  std::size_t dim = 0;
  std::vector<double> values;  ///< grid->size() * dim, row per time point

  std::span<const double> at(std::size_t i) const {
    return {values.data() + i * dim, dim};
  }
  std::span<double> at(std::size_t i) {
    return {values.data() + i * dim, dim};
  }

  static GridFunction zeros(std::shared_ptr<const Grid> grid, std::size_t dim);

  /// Euclidean norm of the state at grid index i.
  double norm_at(std::size_t i) const;
};

/// Linear interpolation of a grid function at time t (clamped to the grid
/// range). Writes dim values into out.
void interpolate(const GridFunction& f, double t, std::span<double> out);

/// Index of the last grid point with time <= t (times are strictly
/// increasing).
std::size_t lower_index(const Grid& grid, double t);

}  // namespace fts

#endif  // FTS_GRID_HPP
