#include "fts/functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace fts::families {

TimeFn constant_time(double value) {
  return [value](double) { return value; };
}

TimeFn cos2sin2_delay(double amplitude) {
  return [amplitude](double s) {
    const double c = std::cos(s), sn = std::sin(s);
    return amplitude * c * c * sn * sn;
  };
}

double cos2sin2_delay_cap(double amplitude) { return amplitude / 4.0; }

VectorFn constant_vector(std::vector<double> value) {
  return [value = std::move(value)](double, std::span<double> out) {
    std::copy(value.begin(), value.end(), out.begin());
  };
}

VectorFn zero_vector() {
  return [](double, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
  };
}

VectorFn sin_cos_boundary(double rho) {
  return [rho](double t, std::span<double> out) {
    if (out.size() != 2) {
      throw std::invalid_argument("sin_cos_boundary: disturbance dimension must be 2");
    }
    out[0] = rho * std::sin(t);
    out[1] = rho * std::cos(t);
  };
}

StateFn sin_componentwise(double scale, std::vector<SinTerm> terms) {
  return [scale, terms = std::move(terms)](double, std::span<const double> x,
                                           std::span<const double> x_del,
                                           std::span<const double>,
                                           std::span<double> out) {
    if (terms.size() != out.size()) {
      throw std::invalid_argument("sin_componentwise: term count must match the "
                                  "state dimension");
    }
    for (std::size_t m = 0; m < terms.size(); ++m) {
      const auto& term = terms[m];
      const auto& src = term.source == SinTerm::Source::state ? x : x_del;
      if (term.index >= src.size()) {
        throw std::invalid_argument("sin_componentwise: component index out of range");
      }
      out[m] = std::sin(scale * src[term.index]);
    }
  };
}

StateFn zero_nonlinearity() {
  return [](double, std::span<const double>, std::span<const double>,
            std::span<const double>, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
  };
}

}  // namespace fts::families
