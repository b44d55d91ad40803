#ifndef FTS_CONFIG_HPP
#define FTS_CONFIG_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fts/system.hpp"

namespace fts {

/// Configuration problem with a field-addressed message (JSON pointer for
/// semantic errors, byte position for parse errors).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverOptions {
  double step = 0.0;        ///< 0 means "auto": (T - t0) / 2048
  int corrector_iters = 1;

  double resolved_step(double t0, double t_end) const {
    return step > 0.0 ? step : (t_end - t0) / 2048.0;
  }
};

/// A parsed run configuration: the declarative document plus the constructed
/// system, query and solver settings.
struct RunConfig {
  SystemSpec system;
  FtsQuery query;
  SolverOptions solver;
  std::string output_prefix;        ///< empty when the config does not set one
  nlohmann::ordered_json document;  ///< normalized declarative form
};

/// Load and strictly validate a config file. Unknown fields are rejected;
/// every diagnostic names the offending field.
RunConfig load_run_config(const std::filesystem::path& path);

/// Parse from an in-memory document (used by the loader and by round-trip
/// tests).
RunConfig parse_run_config(const nlohmann::ordered_json& doc);

}  // namespace fts

#endif  // FTS_CONFIG_HPP
