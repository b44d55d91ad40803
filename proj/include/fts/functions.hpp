#ifndef FTS_FUNCTIONS_HPP
#define FTS_FUNCTIONS_HPP

#include <cstddef>
#include <vector>

#include "fts/system.hpp"

namespace fts {

/// Built-in function families configs can declare. Keeping nonlinearities in
/// a registry (rather than accepting arbitrary code) keeps run configs
/// portable and lets the Lipschitz envelope be checked against a known form.
namespace families {

/// kappa/g family: constant value.
TimeFn constant_time(double value);

/// Delay g(s) = amplitude * cos^2(s) sin^2(s); its cap is amplitude / 4.
TimeFn cos2sin2_delay(double amplitude);
double cos2sin2_delay_cap(double amplitude);

/// nu/d family: constant vector.
VectorFn constant_vector(std::vector<double> value);

/// d family: zero signal.
VectorFn zero_vector();

/// d family (p = 2): the rotating boundary signal rho (sin t, cos t), which
/// satisfies d^T d = rho^2 exactly.
VectorFn sin_cos_boundary(double rho);

/// f family: component m is sin(scale * source_m[index_m]) where source_m is
/// either the current state or the delayed state. The matching Lipschitz
/// envelope is the constant `scale`.
struct SinTerm {
  enum class Source { state, delayed };
  Source source = Source::state;
  std::size_t index = 0;
};
StateFn sin_componentwise(double scale, std::vector<SinTerm> terms);

/// f family: identically zero.
StateFn zero_nonlinearity();

}  // namespace families

}  // namespace fts

#endif  // FTS_FUNCTIONS_HPP
