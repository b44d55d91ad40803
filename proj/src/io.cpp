#include "fts/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fts {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary: LF line endings everywhere
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  return out;
}

}  // namespace

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  auto out = open_out(path);
  const std::size_t n = traj.states.dim;
  out << "t";
  for (std::size_t c = 1; c <= n; ++c) out << ",x" << c;
  out << ",norm\n";
  const Grid& grid = traj.grid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << format_double(grid.times[i]);
    for (double v : traj.states.at(i)) out << ',' << format_double(v);
    out << ',' << format_double(traj.states.norm_at(i)) << '\n';
  }
}

void write_sweep_csv(const std::filesystem::path& path, const EtaSweepResult& sweep) {
  auto out = open_out(path);
  out << "eta,C,D,verdict_D\n";
  for (const auto& row : sweep.rows) {
    out << format_double(row.eta) << ',' << format_double(row.c_bound) << ','
        << format_double(row.d_bound) << ',' << (row.verdict_d ? "true" : "false")
        << '\n';
  }
}

nlohmann::ordered_json certificate_to_json(const Certificate& cert) {
  nlohmann::ordered_json j;
  j["a0"] = cert.a0;
  j["a1"] = cert.a1;
  j["a2"] = cert.a2;
  j["M"] = cert.m_constant;
  j["r1"] = cert.r1;
  j["r2"] = cert.r2;
  j["C"] = std::isfinite(cert.c_bound) ? nlohmann::ordered_json(cert.c_bound)
                                       : nlohmann::ordered_json("overflow");
  j["D"] = std::isfinite(cert.d_bound) ? nlohmann::ordered_json(cert.d_bound)
                                       : nlohmann::ordered_json("overflow");
  j["eta"] = cert.eta_used;
  j["verdict_C"] = cert.verdict_c;
  j["verdict_D"] = cert.verdict_d;
  j["status"] = to_string(cert.status);
  return j;
}

nlohmann::ordered_json envelope_to_json(const EnvelopeReport& report) {
  nlohmann::ordered_json j;
  j["max_sup_norm"] = report.max_sup_norm;
  j["all_within_eps2"] = report.all_within_eps2;
  j["violations"] = report.violations;
  auto runs = nlohmann::ordered_json::array();
  for (const auto& run : report.runs) {
    runs.push_back({{"index", run.index},
                    {"disturbance", run.disturbance},
                    {"sup_norm", run.sup_norm},
                    {"blew_up", run.blew_up}});
  }
  j["runs"] = runs;
  return j;
}

nlohmann::ordered_json picard_log_to_json(const PicardResult& picard) {
  nlohmann::ordered_json j;
  j["converged"] = picard.converged;
  j["contraction_bound"] = picard.contraction_bound;
  auto log = nlohmann::ordered_json::array();
  for (const auto& entry : picard.log) {
    log.push_back({{"iteration", entry.iteration},
                   {"distance", entry.distance},
                   {"ratio", entry.ratio}});
  }
  j["iterations"] = log;
  return j;
}

nlohmann::ordered_json apriori_to_json(const AprioriReport& report) {
  nlohmann::ordered_json j;
  j["distance_to_anchor"] = report.distance_to_anchor;
  j["distance_bound"] = report.distance_bound;
  j["distance_margin"] = report.distance_margin;
  j["distance_ok"] = report.distance_ok;
  j["max_pointwise_excess"] = report.max_pointwise_excess;
  j["pointwise_ok"] = report.pointwise_ok;
  return j;
}

}  // namespace fts
