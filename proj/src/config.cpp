#include "fts/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "fts/functions.hpp"

namespace fts {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config error at " + where + ": " + what);
}

void require_keys(const ordered_json& obj, const std::string& where,
                  const std::set<std::string>& required,
                  const std::set<std::string>& optional) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!required.contains(key) && !optional.contains(key)) {
      fail(where + "/" + key, "unknown field (strict mode)");
    }
  }
  for (const auto& key : required) {
    if (!obj.contains(key)) fail(where, "missing required field '" + key + "'");
  }
}

double get_number(const ordered_json& obj, const std::string& where,
                  const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) fail(where + "/" + key, "expected a number");
  return v.get<double>();
}

std::vector<double> get_vector(const ordered_json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(where, "expected a non-empty array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) fail(where, "expected numeric entries");
    out.push_back(x.get<double>());
  }
  return out;
}

Matrix get_matrix(const ordered_json& obj, const std::string& where,
                  const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_array() || v.empty()) fail(where + "/" + key, "expected a matrix (array of rows)");
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  Matrix m;
  for (std::size_t i = 0; i < rows; ++i) {
    const auto row = get_vector(v[i], where + "/" + key + "/" + std::to_string(i));
    if (i == 0) {
      cols = row.size();
      m = Matrix(rows, cols);
    } else if (row.size() != cols) {
      fail(where + "/" + key, "ragged matrix rows");
    }
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = row[j];
  }
  return m;
}

TimeFn parse_kappa(const ordered_json& obj, const std::string& where) {
  require_keys(obj, where, {"family"}, {"value", "comment"});
  const std::string family = obj.at("family").get<std::string>();
  if (family == "constant") {
    const double value = get_number(obj, where, "value");
    if (value < 0.0) fail(where + "/value", "kappa must be nonnegative");
    return families::constant_time(value);
  }
  fail(where + "/family", "unknown kappa family '" + family + "'");
}

std::pair<TimeFn, double> parse_delay(const ordered_json& obj, const std::string& where) {
  require_keys(obj, where, {"family"}, {"value", "amplitude", "comment"});
  const std::string family = obj.at("family").get<std::string>();
  if (family == "constant") {
    const double value = get_number(obj, where, "value");
    if (value < 0.0) fail(where + "/value", "delay must be nonnegative");
    return {families::constant_time(value), value};
  }
  if (family == "cos2sin2") {
    const double amplitude = get_number(obj, where, "amplitude");
    if (amplitude < 0.0) fail(where + "/amplitude", "amplitude must be nonnegative");
    return {families::cos2sin2_delay(amplitude),
            families::cos2sin2_delay_cap(amplitude)};
  }
  fail(where + "/family", "unknown delay family '" + family + "'");
}

std::pair<VectorFn, std::size_t> parse_history(const ordered_json& obj,
                                               const std::string& where) {
  require_keys(obj, where, {"family"}, {"value", "comment"});
  const std::string family = obj.at("family").get<std::string>();
  if (family == "constant") {
    auto value = get_vector(obj.at("value"), where + "/value");
    const std::size_t dim = value.size();
    return {families::constant_vector(std::move(value)), dim};
  }
  fail(where + "/family", "unknown history family '" + family + "'");
}

VectorFn parse_disturbance(const ordered_json& obj, const std::string& where,
                           std::size_t expected_dim) {
  require_keys(obj, where, {"family"}, {"value", "rho", "comment"});
  const std::string family = obj.at("family").get<std::string>();
  if (family == "zero") return families::zero_vector();
  if (family == "constant") {
    auto value = get_vector(obj.at("value"), where + "/value");
    if (value.size() != expected_dim) {
      fail(where + "/value", "disturbance dimension must match the A2 column count");
    }
    return families::constant_vector(std::move(value));
  }
  if (family == "sin_cos_boundary") {
    if (expected_dim != 2) {
      fail(where + "/family", "sin_cos_boundary requires a 2-column A2");
    }
    return families::sin_cos_boundary(get_number(obj, where, "rho"));
  }
  fail(where + "/family", "unknown disturbance family '" + family + "'");
}

StateFn parse_nonlinearity(const ordered_json& obj, const std::string& where,
                           std::size_t state_dim) {
  require_keys(obj, where, {"family"}, {"scale", "terms", "comment"});
  const std::string family = obj.at("family").get<std::string>();
  if (family == "zero") return families::zero_nonlinearity();
  if (family == "sin_componentwise") {
    const double scale = get_number(obj, where, "scale");
    if (!obj.contains("terms")) fail(where, "missing required field 'terms'");
    const auto& terms_json = obj.at("terms");
    if (!terms_json.is_array() || terms_json.size() != state_dim) {
      fail(where + "/terms", "expected one term per state component");
    }
    std::vector<families::SinTerm> terms;
    for (std::size_t i = 0; i < terms_json.size(); ++i) {
      const std::string term_where = where + "/terms/" + std::to_string(i);
      require_keys(terms_json[i], term_where, {"source", "index"}, {});
      families::SinTerm term;
      const std::string source = terms_json[i].at("source").get<std::string>();
      if (source == "state") {
        term.source = families::SinTerm::Source::state;
      } else if (source == "delayed") {
        term.source = families::SinTerm::Source::delayed;
      } else {
        fail(term_where + "/source", "must be 'state' or 'delayed'");
      }
      const auto index = terms_json[i].at("index").get<long long>();
      // Config indices are 1-based (x1 ... xn).
      if (index < 1 || static_cast<std::size_t>(index) > state_dim) {
        fail(term_where + "/index", "component index out of range");
      }
      term.index = static_cast<std::size_t>(index - 1);
      terms.push_back(term);
    }
    return families::sin_componentwise(scale, std::move(terms));
  }
  fail(where + "/family", "unknown nonlinearity family '" + family + "'");
}

}  // namespace

RunConfig parse_run_config(const ordered_json& doc) {
  require_keys(doc, "/", {"system", "query"}, {"solver", "output", "comment"});

  RunConfig config;
  config.document = doc;

  // --- system ---
  const auto& sys = doc.at("system");
  require_keys(sys, "/system",
               {"beta", "t0", "T", "A0", "A1", "A2", "kappa", "f", "g", "nu", "d", "rho"},
               {"comment"});
  SystemSpec& spec = config.system;
  spec.beta = get_number(sys, "/system", "beta");
  spec.t0 = get_number(sys, "/system", "t0");
  spec.t_end = get_number(sys, "/system", "T");
  spec.a0 = get_matrix(sys, "/system", "A0");
  spec.a1 = get_matrix(sys, "/system", "A1");
  spec.a2 = get_matrix(sys, "/system", "A2");
  spec.rho = get_number(sys, "/system", "rho");
  spec.kappa = parse_kappa(sys.at("kappa"), "/system/kappa");
  auto [g_fn, g_cap] = parse_delay(sys.at("g"), "/system/g");
  spec.g = std::move(g_fn);
  spec.g_max = g_cap;
  auto [nu_fn, nu_dim] = parse_history(sys.at("nu"), "/system/nu");
  if (nu_dim != spec.a0.rows()) {
    fail("/system/nu/value", "history dimension must match the state dimension");
  }
  spec.nu = std::move(nu_fn);
  spec.d = parse_disturbance(sys.at("d"), "/system/d", spec.a2.cols());
  spec.f = parse_nonlinearity(sys.at("f"), "/system/f", spec.a0.rows());

  try {
    validate_dimensions(spec);
  } catch (const std::invalid_argument& e) {
    fail("/system", e.what());
  }

  // --- query ---
  const auto& query_json = doc.at("query");
  require_keys(query_json, "/query", {"eps1", "eps2", "rho", "eta"}, {"T", "comment"});
  FtsQuery& query = config.query;
  query.eps1 = get_number(query_json, "/query", "eps1");
  query.eps2 = get_number(query_json, "/query", "eps2");
  query.rho = get_number(query_json, "/query", "rho");
  query.horizon = query_json.contains("T") ? get_number(query_json, "/query", "T")
                                           : spec.t_end;
  const auto& eta_json = query_json.at("eta");
  if (eta_json.is_number()) {
    query.eta = eta_json.get<double>();
  } else if (eta_json.is_object()) {
    require_keys(eta_json, "/query/eta", {"min", "max", "points"}, {});
    EtaSearch search;
    search.lo = get_number(eta_json, "/query/eta", "min");
    search.hi = get_number(eta_json, "/query/eta", "max");
    const auto points = eta_json.at("points").get<long long>();
    if (points < 1) fail("/query/eta/points", "must be at least 1");
    search.points = static_cast<std::size_t>(points);
    query.eta = search;
  } else {
    fail("/query/eta", "expected a number or a search object {min, max, points}");
  }
  try {
    validate_query(query, spec);
  } catch (const std::invalid_argument& e) {
    fail("/query", e.what());
  }

  // --- solver ---
  if (doc.contains("solver")) {
    const auto& solver = doc.at("solver");
    require_keys(solver, "/solver", {}, {"step", "corrector_iters", "comment"});
    if (solver.contains("step")) {
      const auto& step = solver.at("step");
      if (step.is_string()) {
        if (step.get<std::string>() != "auto") {
          fail("/solver/step", "expected a positive number or \"auto\"");
        }
      } else if (step.is_number() && step.get<double>() > 0.0) {
        config.solver.step = step.get<double>();
      } else {
        fail("/solver/step", "expected a positive number or \"auto\"");
      }
    }
    if (solver.contains("corrector_iters")) {
      const auto iters = solver.at("corrector_iters").get<long long>();
      if (iters < 1) fail("/solver/corrector_iters", "must be at least 1");
      config.solver.corrector_iters = static_cast<int>(iters);
    }
  }

  // --- output ---
  if (doc.contains("output")) {
    const auto& output = doc.at("output");
    require_keys(output, "/output", {}, {"prefix", "comment"});
    if (output.contains("prefix")) {
      config.output_prefix = output.at("prefix").get<std::string>();
    }
  }

  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    std::ostringstream os;
    os << "JSON parse error in " << path.string() << " at byte " << e.byte << ": "
       << e.what();
    throw ConfigError(os.str());
  }
  try {
    return parse_run_config(doc);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config error in " + path.string() + ": " + e.what());
  }
}

}  // namespace fts
