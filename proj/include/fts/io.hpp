#ifndef FTS_IO_HPP
#define FTS_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "fts/certificate.hpp"
#include "fts/fixedpoint.hpp"
#include "fts/simulator.hpp"

namespace fts {

/// 17 significant digits: lossless round-trip of doubles in CSV text.
std::string format_double(double value);

/// CSV `t,x1,...,xn,norm`, one row per grid point, LF line endings.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

/// CSV `eta,C,D,verdict_D` for a sweep.
void write_sweep_csv(const std::filesystem::path& path, const EtaSweepResult& sweep);

nlohmann::ordered_json certificate_to_json(const Certificate& cert);
nlohmann::ordered_json envelope_to_json(const EnvelopeReport& report);
nlohmann::ordered_json picard_log_to_json(const PicardResult& picard);
nlohmann::ordered_json apriori_to_json(const AprioriReport& report);

}  // namespace fts

#endif  // FTS_IO_HPP
