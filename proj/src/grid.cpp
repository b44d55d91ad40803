#include "fts/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fts {

std::shared_ptr<const Grid> Grid::make(double t0, double t_end, double g_max,
                                       double step) {
  if (!(t_end > t0)) throw std::invalid_argument("Grid: requires t_end > t0");
  if (!(step > 0.0)) throw std::invalid_argument("Grid: step must be positive");
  if (!(g_max >= 0.0)) throw std::invalid_argument("Grid: g_max must be nonnegative");

  auto grid = std::make_shared<Grid>();
  const double span = t_end - t0;
  const auto steps = static_cast<std::size_t>(std::ceil(span / step - 1e-9));
  grid->forward_steps = std::max<std::size_t>(steps, 1);
  grid->step = span / static_cast<double>(grid->forward_steps);
  grid->t0 = t0;
  grid->t_end = t_end;
  grid->g_max = g_max;

  const double h = grid->step;
  std::vector<double> hist;
  for (std::size_t j = 1; static_cast<double>(j) * h < g_max * (1.0 - 1e-12); ++j) {
    hist.push_back(t0 - static_cast<double>(j) * h);
  }
  if (g_max > 0.0) hist.push_back(t0 - g_max);
  std::reverse(hist.begin(), hist.end());

  grid->history_points = hist.size();
  grid->times = std::move(hist);
  grid->times.reserve(grid->times.size() + grid->forward_steps + 1);
  for (std::size_t k = 0; k <= grid->forward_steps; ++k) {
    grid->times.push_back(k == grid->forward_steps
                              ? t_end
                              : t0 + static_cast<double>(k) * h);
  }
  return grid;
}

GridFunction GridFunction::zeros(std::shared_ptr<const Grid> grid, std::size_t dim) {
  GridFunction f;
  f.dim = dim;
  f.values.assign(grid->size() * dim, 0.0);
  f.grid = std::move(grid);
  return f;
}

double GridFunction::norm_at(std::size_t i) const {
  double acc = 0.0;
  for (double v : at(i)) acc += v * v;
  return std::sqrt(acc);
}

std::size_t lower_index(const Grid& grid, double t) {
  const auto& times = grid.times;
  if (t <= times.front()) return 0;
  if (t >= times.back()) return times.size() - 1;
  // Uniform on [t0, t_end]; direct index arithmetic when possible.
  if (t >= grid.t0) {
    auto k = static_cast<std::size_t>((t - grid.t0) / grid.step);
    std::size_t i = grid.start_index() + std::min(k, grid.forward_steps);
    while (times[i] > t) --i;
    while (i + 1 < times.size() && times[i + 1] <= t) ++i;
    return i;
  }
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  return static_cast<std::size_t>(it - times.begin()) - 1;
}

void interpolate(const GridFunction& f, double t, std::span<double> out) {
  const Grid& grid = *f.grid;
  const std::size_t i = lower_index(grid, t);
  if (t <= grid.times.front()) {
    const auto v = f.at(0);
    std::copy(v.begin(), v.end(), out.begin());
    return;
  }
  if (t >= grid.times.back()) {
    const auto v = f.at(grid.size() - 1);
    std::copy(v.begin(), v.end(), out.begin());
    return;
  }
  const double tl = grid.times[i];
  if (t == tl || i + 1 >= grid.size()) {
    const auto v = f.at(i);
    std::copy(v.begin(), v.end(), out.begin());
    return;
  }
  const double tr = grid.times[i + 1];
  const double w = (t - tl) / (tr - tl);
  const auto vl = f.at(i);
  const auto vr = f.at(i + 1);
  for (std::size_t c = 0; c < f.dim; ++c) out[c] = (1.0 - w) * vl[c] + w * vr[c];
}

}  // namespace fts
