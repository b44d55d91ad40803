#include "fts/caputo.hpp"

#include <cmath>
#include <stdexcept>

#include "fts/specfun.hpp"

namespace fts {

CaputoWeights CaputoWeights::make(double beta, double h, std::size_t max_steps) {
  if (!(beta > 0.0) || !(beta <= 1.0)) {
    throw std::invalid_argument("CaputoWeights: beta must lie in (0, 1]");
  }
  if (!(h > 0.0)) throw std::invalid_argument("CaputoWeights: step must be positive");

  CaputoWeights w;
  w.beta = beta;
  w.h = h;
  const double h_beta = std::pow(h, beta);
  w.predictor_scale = h_beta / gamma(beta + 1.0);
  w.corrector_scale = h_beta / gamma(beta + 2.0);
  w.pow_beta.resize(max_steps + 2);
  w.pow_beta1.resize(max_steps + 2);
  for (std::size_t m = 0; m < w.pow_beta.size(); ++m) {
    const auto x = static_cast<double>(m);
    w.pow_beta[m] = std::pow(x, beta);
    w.pow_beta1[m] = std::pow(x, beta + 1.0);
  }
  return w;
}

}  // namespace fts
