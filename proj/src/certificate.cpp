#include "fts/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fts/linalg.hpp"
#include "fts/specfun.hpp"

namespace fts {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Golden-section maximization on [lo, hi].
template <typename Fn>
double golden_max(Fn&& f, double lo, double hi, double value_rel_tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int iter = 0; iter < 200; ++iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    const double best = std::max(fc, fd);
    if (std::abs(fc - fd) <= value_rel_tol * std::max(best, 1e-300) &&
        (b - a) <= 1e-12 * std::max(std::abs(lo), std::abs(hi)) + 1e-300) {
      break;
    }
  }
  return std::max(fc, fd);
}

double max_kappa(const TimeFn& kappa, double t0, double t_end,
                 std::size_t grid_points) {
  auto eval = [&](double t) {
    const double v = kappa(t);
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("compute_coefficients: kappa returned a negative "
                                  "or non-finite value");
    }
    return v;
  };

  double best = -1.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i <= grid_points; ++i) {
    const double t = t0 + (t_end - t0) * static_cast<double>(i) /
                              static_cast<double>(grid_points);
    const double v = eval(t);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }

  // Local subdivision around the argmax until the value settles.
  const double h = (t_end - t0) / static_cast<double>(grid_points);
  double lo = std::max(t0, t0 + (static_cast<double>(best_i) - 1.0) * h);
  double hi = std::min(t_end, t0 + (static_cast<double>(best_i) + 1.0) * h);
  double prev = best;
  for (int round = 0; round < 60; ++round) {
    double local_best = prev;
    double local_t = 0.5 * (lo + hi);
    for (std::size_t i = 0; i <= 32; ++i) {
      const double t = lo + (hi - lo) * static_cast<double>(i) / 32.0;
      const double v = eval(t);
      if (v > local_best) {
        local_best = v;
        local_t = t;
      }
    }
    const double width = (hi - lo) / 32.0;
    lo = std::max(t0, local_t - width);
    hi = std::min(t_end, local_t + width);
    if (std::abs(local_best - prev) < 1e-9 * std::max(1.0, local_best)) {
      return local_best;
    }
    prev = local_best;
  }
  return prev;
}

}  // namespace

std::string to_string(CertificateStatus status) {
  switch (status) {
    case CertificateStatus::certified: return "certified";
    case CertificateStatus::not_certified: return "not-certified";
    case CertificateStatus::vacuous: return "vacuous";
  }
  return "unknown";
}

Coefficients compute_coefficients(const SystemSpec& spec, std::size_t grid_points) {
  if (grid_points < 100) {
    throw std::invalid_argument("compute_coefficients: at least 100 grid points required");
  }
  validate_dimensions(spec);
  const double kmax = max_kappa(spec.kappa, spec.t0, spec.t_end, grid_points);
  Coefficients c;
  c.a0 = spectral_norm(spec.a0) + kmax;
  c.a1 = spectral_norm(spec.a1) + kmax;
  c.a2 = spectral_norm(spec.a2) + kmax;
  return c;
}

double compute_m_constant(double beta, double theta, double t0, double t_end,
                          std::size_t grid_points) {
  if (!(beta > 0.0) || !(beta <= 1.0)) {
    throw std::invalid_argument("compute_m_constant: beta must lie in (0, 1]");
  }
  if (!(theta > 0.0)) {
    throw std::invalid_argument("compute_m_constant: theta must be positive");
  }
  if (t_end < t0) {
    throw std::invalid_argument("compute_m_constant: requires t_end >= t0");
  }
  if (grid_points < 200) {
    throw std::invalid_argument("compute_m_constant: at least 200 grid points required");
  }
  const double span = t_end - t0;
  if (span == 0.0) return 0.0;

  const MlfParams params{beta};
  auto phi = [&](double u) {
    const double ub = std::pow(u, beta);
    double e;
    try {
      e = mittag_leffler(params, theta * ub);
    } catch (const std::overflow_error&) {
      return 0.0;  // denominator past the double range; the ratio has long decayed
    }
    return ub / e;
  };

  std::vector<double> values(grid_points + 1);
  double grid_max = 0.0;
  for (std::size_t i = 0; i <= grid_points; ++i) {
    const double u = span * static_cast<double>(i) / static_cast<double>(grid_points);
    values[i] = phi(u);
    grid_max = std::max(grid_max, values[i]);
  }

  // The map u -> u^beta / E_beta(theta u^beta) is not certified unimodal;
  // refine around every local maximum close to the grid maximum.
  const double du = span / static_cast<double>(grid_points);
  double best = grid_max;
  for (std::size_t i = 0; i <= grid_points; ++i) {
    const bool local_max =
        (i == 0 || values[i] >= values[i - 1]) &&
        (i == grid_points || values[i] >= values[i + 1]);
    if (!local_max || values[i] < grid_max * (1.0 - 1e-3)) continue;
    const double lo = std::max(0.0, (static_cast<double>(i) - 1.0) * du);
    const double hi = std::min(span, (static_cast<double>(i) + 1.0) * du);
    best = std::max(best, golden_max(phi, lo, hi, 1e-9));
  }

  const double lemma_bound = gamma(beta + 1.0) / theta;
  if (best > lemma_bound * (1.0 + 1e-8)) {
    throw std::runtime_error("compute_m_constant: supremum exceeded the Lemma "
                             "bound Gamma(beta+1)/theta; evaluation is inconsistent");
  }
  return std::min(best, lemma_bound);
}

Certificate compute_certificate(const SystemSpec& spec, const FtsQuery& query,
                                double eta) {
  if (!(eta > 0.0)) {
    throw std::invalid_argument("compute_certificate: eta must be positive");
  }
  validate_dimensions(spec);

  constexpr std::size_t kCoeffGrid = 512;
  constexpr std::size_t kMGrid = 512;

  const Coefficients coeff = compute_coefficients(spec, kCoeffGrid);
  const double theta = coeff.sum01() + eta;
  const double span = spec.t_end - spec.t0;
  const double gamma_b1 = gamma(spec.beta + 1.0);

  Certificate cert;
  cert.a0 = coeff.a0;
  cert.a1 = coeff.a1;
  cert.a2 = coeff.a2;
  cert.eta_used = eta;
  cert.provenance = {kCoeffGrid, kMGrid, 1e-12};

  double e_value;
  try {
    // beta = 1 follows the integer-order path: the Mittag-Leffler factor
    // degenerates to the exponential (which mittag_leffler returns exactly).
    e_value = mittag_leffler(MlfParams{spec.beta}, theta * std::pow(span, spec.beta));
  } catch (const std::overflow_error&) {
    cert.status = CertificateStatus::vacuous;
    cert.m_constant = compute_m_constant(spec.beta, theta, spec.t0, spec.t_end, kMGrid);
    cert.r1 = cert.m_constant * theta * coeff.sum01() / (eta * gamma_b1);
    cert.r2 = cert.m_constant * theta * coeff.a2 / (eta * gamma_b1);
    cert.c_bound = kInf;
    cert.d_bound = kInf;
    return cert;
  }

  cert.m_constant = compute_m_constant(spec.beta, theta, spec.t0, spec.t_end, kMGrid);
  cert.r1 = cert.m_constant * theta * coeff.sum01() / (eta * gamma_b1);
  cert.r2 = cert.m_constant * theta * coeff.a2 / (eta * gamma_b1);
  cert.c_bound = (cert.r1 * e_value + 1.0) * query.eps1 + cert.r2 * e_value * query.rho;
  cert.d_bound = (coeff.sum01() / eta * e_value + 1.0) * query.eps1 +
                 (coeff.a2 / eta) * e_value * query.rho;

  if (!std::isfinite(cert.c_bound) || !std::isfinite(cert.d_bound)) {
    cert.status = CertificateStatus::vacuous;
    return cert;
  }
  cert.verdict_c = cert.c_bound <= query.eps2;
  cert.verdict_d = cert.d_bound <= query.eps2;
  cert.status = (cert.verdict_c || cert.verdict_d) ? CertificateStatus::certified
                                                   : CertificateStatus::not_certified;
  return cert;
}

Certificate compute_certificate(const SystemSpec& spec, const FtsQuery& query) {
  validate_query(query, spec);
  if (query.has_search()) {
    return optimize_eta(spec, query).best;
  }
  return compute_certificate(spec, query, query.fixed_eta());
}

EtaSweepResult optimize_eta(const SystemSpec& spec, const FtsQuery& query) {
  EtaSearch search;
  if (query.has_search()) {
    search = std::get<EtaSearch>(query.eta);
  } else {
    search = EtaSearch{query.fixed_eta(), query.fixed_eta(), 1};
  }
  if (!(search.lo > 0.0) || search.lo > search.hi) {
    throw std::invalid_argument("optimize_eta: requires 0 < lo <= hi");
  }

  const std::size_t points = std::max<std::size_t>(search.points, 1);
  std::vector<double> etas(points);
  if (points == 1 || search.lo == search.hi) {
    etas.assign(points, search.lo);
  } else {
    const double log_lo = std::log(search.lo);
    const double log_hi = std::log(search.hi);
    for (std::size_t i = 0; i < points; ++i) {
      etas[i] = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                                      static_cast<double>(points - 1));
    }
  }

  EtaSweepResult result;
  result.rows.resize(points);
  std::vector<Certificate> certs(points);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long long ii = 0; ii < static_cast<long long>(points); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    certs[i] = compute_certificate(spec, query, etas[i]);
    result.rows[i] = {etas[i], certs[i].c_bound, certs[i].d_bound,
                      certs[i].verdict_d,
                      certs[i].status == CertificateStatus::vacuous};
  }

  // Deterministic reduction: min by D, ties broken by smaller eta (rows are
  // ascending in eta, so the first strict improvement wins).
  std::size_t best_i = 0;
  bool found = false;
  for (std::size_t i = 0; i < points; ++i) {
    if (result.rows[i].vacuous) continue;
    if (!found || result.rows[i].d_bound < result.rows[best_i].d_bound) {
      best_i = i;
      found = true;
    }
  }
  if (!found) {
    result.all_vacuous = true;
    result.best = certs[0];
    return result;
  }

  // Refine around the best grid point: golden-section minimization of D on
  // the bracketing interval, to 1e-4 relative in eta.
  double lo = best_i > 0 ? etas[best_i - 1] : etas[best_i];
  double hi = best_i + 1 < points ? etas[best_i + 1] : etas[best_i];
  Certificate best = certs[best_i];
  if (hi > lo) {
    auto d_at = [&](double eta) {
      const Certificate c = compute_certificate(spec, query, eta);
      return c.status == CertificateStatus::vacuous ? kInf : c.d_bound;
    };
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = d_at(c), fd = d_at(d);
    while ((b - a) > 1e-4 * a) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kInvPhi * (b - a);
        fc = d_at(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kInvPhi * (b - a);
        fd = d_at(d);
      }
    }
    const double eta_star = fc < fd ? c : d;
    const Certificate refined = compute_certificate(spec, query, eta_star);
    if (refined.status != CertificateStatus::vacuous &&
        refined.d_bound < best.d_bound) {
      best = refined;
    }
  }
  result.best = best;
  return result;
}

}  // namespace fts
