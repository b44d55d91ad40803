#ifndef FTS_CAPUTO_HPP
#define FTS_CAPUTO_HPP

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fts {

/// Product-integration weights on a uniform grid for the Caputo integral
/// (1/Gamma(beta)) \int_{t0}^{t_m} (t_m - s)^{beta-1} F(s) ds:
/// product-rectangle rule for the predictor, product-trapezoidal rule for
/// the corrector, in the usual Adams-Bashforth-Moulton arrangement.
struct CaputoWeights {
  double beta = 0.0;
  double h = 0.0;
  double predictor_scale = 0.0;  ///< h^beta / Gamma(beta+1)
  double corrector_scale = 0.0;  ///< h^beta / Gamma(beta+2)
  std::vector<double> pow_beta;   ///< m^beta for m = 0 .. N+1
  std::vector<double> pow_beta1;  ///< m^{beta+1}

  static CaputoWeights make(double beta, double h, std::size_t max_steps);

  /// Rectangle weight for source index j at target m (lag = m - j >= 1);
  /// multiply the sum by predictor_scale.
  double predictor(std::size_t lag) const {
    return pow_beta[lag] - pow_beta[lag - 1];
  }

  /// Trapezoidal weight for 1 <= j <= m-1 (lag = m - j); multiply by
  /// corrector_scale. The j = m weight is 1, the j = 0 weight is
  /// corrector_first(m).
  double corrector(std::size_t lag) const {
    return pow_beta1[lag + 1] + pow_beta1[lag - 1] - 2.0 * pow_beta1[lag];
  }

  double corrector_first(std::size_t m) const {
    const auto k = static_cast<double>(m - 1);
    return pow_beta1[m - 1] - (k - beta) * pow_beta[m];
  }
};

namespace detail {

inline constexpr std::size_t kSumBlock = 512;

inline bool parallel_blocks_allowed(std::size_t blocks) {
#ifdef _OPENMP
  return blocks >= 4 && omp_in_parallel() == 0;
#else
  (void)blocks;
  return false;
#endif
}

}  // namespace detail

/// out[c] = sum_{j=0}^{count-1} w(j) * f[j*dim + c].
///
/// Summation is blocked with a fixed block size and the block partials are
/// combined in index order, so the result is bitwise identical whether the
/// block loop runs serially or under OpenMP and for any thread count.
template <typename WeightFn>
void blocked_weighted_sum(std::size_t count, std::size_t dim, const double* f,
                          WeightFn&& w, double* out) {
  const std::size_t blocks = (count + detail::kSumBlock - 1) / detail::kSumBlock;
  for (std::size_t c = 0; c < dim; ++c) out[c] = 0.0;
  if (blocks == 0) return;

  if (blocks == 1) {
    for (std::size_t j = 0; j < count; ++j) {
      const double wj = w(j);
      for (std::size_t c = 0; c < dim; ++c) out[c] += wj * f[j * dim + c];
    }
    return;
  }

  std::vector<double> partial(blocks * dim, 0.0);
  const bool parallel = detail::parallel_blocks_allowed(blocks);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (long long bi = 0; bi < static_cast<long long>(blocks); ++bi) {
    const auto b = static_cast<std::size_t>(bi);
    const std::size_t lo = b * detail::kSumBlock;
    const std::size_t hi = std::min(lo + detail::kSumBlock, count);
    double* acc = partial.data() + b * dim;
    for (std::size_t j = lo; j < hi; ++j) {
      const double wj = w(j);
      for (std::size_t c = 0; c < dim; ++c) acc[c] += wj * f[j * dim + c];
    }
  }
  for (std::size_t b = 0; b < blocks; ++b) {
    const double* acc = partial.data() + b * dim;
    for (std::size_t c = 0; c < dim; ++c) out[c] += acc[c];
  }
}

/// Reference implementation with the naive left-to-right summation order;
/// kept for tests and benchmarks against the blocked kernel.
template <typename WeightFn>
void serial_weighted_sum(std::size_t count, std::size_t dim, const double* f,
                         WeightFn&& w, double* out) {
  for (std::size_t c = 0; c < dim; ++c) out[c] = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    const double wj = w(j);
    for (std::size_t c = 0; c < dim; ++c) out[c] += wj * f[j * dim + c];
  }
}

}  // namespace fts

#endif  // FTS_CAPUTO_HPP
