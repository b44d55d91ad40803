#ifndef FTS_CERTIFICATE_HPP
#define FTS_CERTIFICATE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "fts/system.hpp"

namespace fts {

/// a_i = ||A_i|| + max_{s in [t0, T]} kappa(s), i = 0, 1, 2.
struct Coefficients {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double sum01() const { return a0 + a1; }
};

enum class CertificateStatus {
  certified,      ///< bound <= eps2; robust FTS established
  not_certified,  ///< the sufficient condition fails (NOT a verdict of instability)
  vacuous,        ///< E_beta overflowed; the bound certifies nothing
};

std::string to_string(CertificateStatus status);

/// Everything the sufficient condition produces for one eta.
struct Certificate {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0;
  double m_constant = 0.0;  ///< sup_s (s-t0)^beta / E_beta(theta (s-t0)^beta)
  double r1 = 0.0;          ///< M theta (a0+a1) / (eta Gamma(beta+1))
  double r2 = 0.0;          ///< M theta a2 / (eta Gamma(beta+1))
  double c_bound = 0.0;     ///< (r1 E + 1) eps1 + r2 E rho
  double d_bound = 0.0;     ///< ((a0+a1)/eta E + 1) eps1 + (a2/eta) E rho
  double eta_used = 0.0;
  bool verdict_c = false;
  bool verdict_d = false;
  CertificateStatus status = CertificateStatus::not_certified;

  struct Provenance {
    std::size_t coefficient_grid = 0;
    std::size_t m_grid = 0;
    double mlf_rel_tol = 0.0;
  } provenance;
};

/// Spectral norms of the system matrices plus the kappa maximum, refined
/// around the grid argmax until successive refinements agree to 1e-9
/// relative.
Coefficients compute_coefficients(const SystemSpec& spec, std::size_t grid_points = 512);

/// M = sup_{s in [t0, t_end]} (s-t0)^beta / E_beta(theta (s-t0)^beta),
/// dense grid plus golden-section refinement around every local maximum
/// within 1e-3 of the grid maximum. Always <= Gamma(beta+1)/theta (Lemma-1
/// bound, asserted). Zero-length intervals give 0.
double compute_m_constant(double beta, double theta, double t0, double t_end,
                          std::size_t grid_points = 512);

/// Evaluate the certificate at a fixed eta (query.eta when fixed, otherwise
/// pass the eta explicitly via the overload).
Certificate compute_certificate(const SystemSpec& spec, const FtsQuery& query);
Certificate compute_certificate(const SystemSpec& spec, const FtsQuery& query, double eta);

/// One row of an eta sweep.
struct SweepRow {
  double eta = 0.0;
  double c_bound = 0.0;
  double d_bound = 0.0;
  bool verdict_d = false;
  bool vacuous = false;
};

struct EtaSweepResult {
  std::vector<SweepRow> rows;  ///< log-spaced grid, ascending eta
  Certificate best;            ///< certificate at the refined minimizer of D
  bool all_vacuous = false;
};

/// Log-spaced eta sweep minimizing the relaxed bound D, refined around the
/// best grid point to 1e-4 relative in eta. Grid points are evaluated in
/// parallel; the reduction is deterministic (min by D, ties to smaller eta).
EtaSweepResult optimize_eta(const SystemSpec& spec, const FtsQuery& query);

}  // namespace fts

#endif  // FTS_CERTIFICATE_HPP
