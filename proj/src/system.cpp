#include "fts/system.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fts {

namespace {

double euclidean(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

}  // namespace

void validate_dimensions(const SystemSpec& spec) {
  if (!(spec.beta > 0.0) || !(spec.beta <= 1.0)) {
    throw std::invalid_argument("SystemSpec: beta must lie in (0, 1]");
  }
  if (!(spec.t_end > spec.t0)) {
    throw std::invalid_argument("SystemSpec: requires t_end > t0");
  }
  if (!(spec.g_max >= 0.0)) {
    throw std::invalid_argument("SystemSpec: g_max must be nonnegative");
  }
  if (!(spec.rho >= 0.0)) {
    throw std::invalid_argument("SystemSpec: rho must be nonnegative");
  }
  const std::size_t n = spec.a0.rows();
  if (n == 0 || spec.a0.cols() != n) {
    throw std::invalid_argument("SystemSpec: A0 must be square and nonempty");
  }
  if (spec.a1.rows() != n || spec.a1.cols() != n) {
    throw std::invalid_argument("SystemSpec: A1 must match the A0 dimensions");
  }
  if (spec.a2.rows() != n || spec.a2.cols() == 0) {
    throw std::invalid_argument("SystemSpec: A2 row count must match the state dimension");
  }
  if (!spec.a0.all_finite() || !spec.a1.all_finite() || !spec.a2.all_finite()) {
    throw std::invalid_argument("SystemSpec: system matrices must be finite");
  }
  if (!spec.kappa || !spec.f || !spec.g || !spec.nu || !spec.d) {
    throw std::invalid_argument("SystemSpec: kappa, f, g, nu, d must all be set");
  }
}

std::vector<std::string> check_hypotheses(const SystemSpec& spec,
                                          const CheckOptions& options) {
  validate_dimensions(spec);
  std::vector<std::string> violations;
  const std::size_t n = spec.state_dim();
  const std::size_t p = spec.disturbance_dim();

  std::vector<double> zero_n(n, 0.0), zero_p(p, 0.0), out(n), out2(n);
  std::vector<double> dbuf(p);

  // Grid checks: f(t,0,0,0) = 0, d^T d <= rho^2, 0 <= g <= g_max, kappa >= 0.
  for (std::size_t i = 0; i <= options.grid_points; ++i) {
    const double t = spec.t0 + (spec.t_end - spec.t0) * static_cast<double>(i) /
                                   static_cast<double>(options.grid_points);
    spec.f(t, zero_n, zero_n, zero_p, out);
    if (euclidean(out) > 0.0) {
      std::ostringstream os;
      os << "f(t,0,0,0) != 0 at t = " << t << " (norm " << euclidean(out) << ")";
      violations.push_back(os.str());
      break;
    }
    spec.d(t, dbuf);
    double dd = 0.0;
    for (double x : dbuf) dd += x * x;
    if (dd > spec.rho * spec.rho * (1.0 + 1e-9)) {
      std::ostringstream os;
      os << "d(t)^T d(t) = " << dd << " exceeds rho^2 at t = " << t;
      violations.push_back(os.str());
      break;
    }
    const double gval = spec.g(t);
    if (!(gval >= 0.0) || gval > spec.g_max * (1.0 + 1e-12) + 1e-15) {
      std::ostringstream os;
      os << "g(t) = " << gval << " outside [0, g_max] at t = " << t;
      violations.push_back(os.str());
      break;
    }
    const double kval = spec.kappa(t);
    if (!(kval >= 0.0) || !std::isfinite(kval)) {
      std::ostringstream os;
      os << "kappa(t) = " << kval << " invalid at t = " << t;
      violations.push_back(os.str());
      break;
    }
  }

  // Randomized Lipschitz probes.
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> time_dist(spec.t0, spec.t_end);
  std::vector<double> u1(n), u2(n), u3(p), w1(n), w2(n), w3(p);
  for (std::size_t probe = 0; probe < options.probe_points; ++probe) {
    const double t = time_dist(rng);
    const double scale = (probe % 2 == 0) ? 1.0 : 100.0;
    for (auto* v : {&u1, &w1, &u2, &w2}) {
      for (double& x : *v) x = scale * unit(rng);
    }
    for (auto* v : {&u3, &w3}) {
      for (double& x : *v) x = scale * unit(rng);
    }
    spec.f(t, u1, u2, u3, out);
    spec.f(t, w1, w2, w3, out2);
    for (std::size_t i = 0; i < n; ++i) out[i] -= out2[i];
    std::vector<double> du1(n), du2(n), du3(p);
    for (std::size_t i = 0; i < n; ++i) du1[i] = u1[i] - w1[i];
    for (std::size_t i = 0; i < n; ++i) du2[i] = u2[i] - w2[i];
    for (std::size_t i = 0; i < p; ++i) du3[i] = u3[i] - w3[i];
    const double lhs = euclidean(out);
    const double rhs =
        spec.kappa(t) * (euclidean(du1) + euclidean(du2) + euclidean(du3));
    if (lhs > rhs * (1.0 + 1e-9) + 1e-300) {
      std::ostringstream os;
      os << "Lipschitz envelope violated at t = " << t << ": ||df|| = " << lhs
         << " > kappa * sum ||du|| = " << rhs;
      violations.push_back(os.str());
      break;
    }
  }

  return violations;
}

void validate_system(const SystemSpec& spec, const CheckOptions& options) {
  const auto violations = check_hypotheses(spec, options);
  if (!violations.empty()) {
    throw std::invalid_argument("SystemSpec hypothesis check failed: " + violations.front());
  }
}

void validate_query(const FtsQuery& query, const SystemSpec& spec) {
  if (!(query.eps1 > 0.0) || !(query.eps1 < query.eps2)) {
    throw std::invalid_argument("FtsQuery: requires 0 < eps1 < eps2");
  }
  if (!(query.rho >= 0.0)) {
    throw std::invalid_argument("FtsQuery: rho must be nonnegative");
  }
  if (std::abs(query.horizon - spec.t_end) > 1e-12 * std::max(1.0, std::abs(spec.t_end))) {
    throw std::invalid_argument("FtsQuery: horizon must match the system horizon");
  }
  if (query.has_search()) {
    const auto& search = std::get<EtaSearch>(query.eta);
    if (!(search.lo > 0.0) || !(search.lo <= search.hi)) {
      throw std::invalid_argument("FtsQuery: eta search range requires 0 < lo <= hi");
    }
    if (search.points < 1) {
      throw std::invalid_argument("FtsQuery: eta search needs at least one point");
    }
  } else if (!(query.fixed_eta() > 0.0)) {
    throw std::invalid_argument("FtsQuery: eta must be positive");
  }
}

}  // namespace fts
