#include "lightcone/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace lightcone::cli {

using nlohmann::ordered_json;

namespace {

const std::set<std::string> kKeys = {
    "omega", "omega_B", "d_A", "d_B", "x_A", "x_B", "c", "N",
    "M", "k_max", "n_max", "t_max", "samples", "dt", "tolerance", "krylov_dim",
    "initial_state", "experiment", "output_dir", "variation", "margin", "omega_shift_factor",
    "fit_lo", "fit_hi", "ladder", "depth", "field_model", "symbolic_mode_pairs", "max_terms",
};

[[noreturn]] void invalid(const std::string& key, const std::string& what) {
  throw ConfigError(ConfigErrorKind::validation, key, key + ": " + what);
}

class Reader {
 public:
  explicit Reader(const ordered_json& obj, std::string prefix = "") : obj_(obj), prefix_(std::move(prefix)) {}

  bool has(const char* key) const { return obj_.contains(key); }

  double number(const char* key, double fallback) const {
    if (!has(key)) return fallback;
    const auto& v = obj_.at(key);
    if (!v.is_number()) invalid(name(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) invalid(name(key), "must be finite");
    return x;
  }

  double positive(const char* key, double fallback) const {
    const double x = number(key, fallback);
    if (!(x > 0.0)) invalid(name(key), "must be positive");
    return x;
  }

  long long integer(const char* key, long long fallback, long long lo) const {
    if (!has(key)) return fallback;
    const auto& v = obj_.at(key);
    if (!v.is_number_integer()) invalid(name(key), "expected an integer");
    const auto x = v.get<long long>();
    if (x < lo) invalid(name(key), "must be at least " + std::to_string(lo));
    return x;
  }

  std::string text(const char* key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const auto& v = obj_.at(key);
    if (!v.is_string()) invalid(name(key), "expected a string");
    return v.get<std::string>();
  }

  std::string name(const char* key) const { return prefix_ + key; }

 private:
  const ordered_json& obj_;
  std::string prefix_;
};

template <class Parse>
auto enum_value(const Reader& r, const char* key, const std::string& fallback, Parse parse) {
  const std::string value = r.text(key, fallback);
  try {
    return parse(value);
  } catch (const ArgumentError& e) {
    invalid(r.name(key), e.what());
  }
}

Experiment parse_experiment(std::string_view s) {
  for (auto e : {Experiment::trace, Experiment::causality, Experiment::slope_fit, Experiment::convergence,
                 Experiment::commutator_check, Experiment::theory_curves}) {
    if (to_string(e) == s) return e;
  }
  throw ArgumentError("unknown experiment '" + std::string(s) + "'");
}

algebra::FieldModel parse_field_model(std::string_view s) {
  if (s == "local_field") return algebra::FieldModel::local_field;
  if (s == "discrete_modes") return algebra::FieldModel::discrete_modes;
  throw ArgumentError("unknown field model '" + std::string(s) + "'");
}

std::string_view field_model_name(algebra::FieldModel m) {
  return m == algebra::FieldModel::local_field ? "local_field" : "discrete_modes";
}

causality::GridSpec read_grid(const Reader& r, causality::GridSpec fallback) {
  causality::GridSpec g;
  g.modes = static_cast<int>(r.integer("M", fallback.modes, 2));
  if (g.modes % 2 != 0) invalid(r.name("M"), "must be even");
  g.k_max = r.positive("k_max", fallback.k_max);
  g.n_max = static_cast<int>(r.integer("n_max", fallback.n_max, 0));
  return g;
}

ordered_json grid_json(const causality::GridSpec& g) {
  return ordered_json{{"M", g.modes}, {"k_max", g.k_max}, {"n_max", g.n_max}};
}

RunConfig from_json(const ordered_json& doc) {
  if (!doc.is_object()) throw ConfigError(ConfigErrorKind::parse, "", "config must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!kKeys.contains(key)) invalid(key, "unknown key");
  }
  const Reader r(doc);
  RunConfig c;
  auto& p = c.physical;
  p.omega = r.positive("omega", 1.0);
  if (r.has("omega_B")) p.omega_B = r.positive("omega_B", 1.0);
  p.d_A = r.number("d_A", 0.02);
  p.d_B = r.number("d_B", 0.02);
  p.speed = r.positive("c", 1.0);
  p.normalization = r.positive("N", 1.0);
  p.x_A = r.number("x_A", 0.0);
  // Defaults put B at r/c = 0.15/Ω, resolve k_max = 20Ω/c and t_max = 0.3/Ω.
  p.x_B = r.number("x_B", p.x_A + 0.15 * p.speed / p.omega);
  c.grid = read_grid(r, {64, 20.0 * p.omega / p.speed, 2});
  c.t_max = r.number("t_max", 0.3 / p.omega);
  if (c.t_max < 0.0) invalid("t_max", "must be nonnegative");
  c.samples = static_cast<std::size_t>(r.integer("samples", 61, 1));
  c.propagator.dt = r.positive("dt", 0.005);
  c.propagator.tolerance = r.positive("tolerance", 1e-10);
  if (c.propagator.tolerance >= 1.0) invalid("tolerance", "must be below 1");
  c.propagator.krylov_dim = static_cast<int>(r.integer("krylov_dim", 20, 2));

  c.initial = enum_value(r, "initial_state", "switch", model::parse_initial_state);
  c.experiment = enum_value(r, "experiment", "trace", parse_experiment);
  c.output_dir = r.text("output_dir", "");

  c.variation = enum_value(r, "variation", "remove_B", causality::parse_variation);
  c.margin = r.number("margin", 0.1);
  if (!(c.margin >= 0.0 && c.margin < 1.0)) invalid("margin", "must lie in [0, 1)");
  c.omega_shift_factor = r.positive("omega_shift_factor", 2.0);
  if (r.has("fit_lo")) c.fit_lo = r.number("fit_lo", 0.0);
  if (r.has("fit_hi")) c.fit_hi = r.number("fit_hi", 0.0);

  if (r.has("ladder")) {
    const auto& arr = doc.at("ladder");
    if (!arr.is_array() || arr.empty()) invalid("ladder", "expected a nonempty array of grids");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string prefix = "ladder[" + std::to_string(i) + "].";
      if (!arr[i].is_object()) invalid("ladder[" + std::to_string(i) + "]", "expected an object");
      for (const auto& [key, _] : arr[i].items()) {
        if (key != "M" && key != "k_max" && key != "n_max") invalid(prefix + key, "unknown key");
      }
      c.ladder.push_back(read_grid(Reader(arr[i], prefix), c.grid));
    }
  } else {
    // M, 2M, 4M with k_max growing as sqrt(M) so both the cutoff and the box grow.
    for (int f : {1, 2, 4}) {
      c.ladder.push_back({c.grid.modes * f, c.grid.k_max * std::sqrt(static_cast<double>(f)), c.grid.n_max});
    }
  }

  c.depth = static_cast<int>(r.integer("depth", 4, 0));
  c.field_model = enum_value(r, "field_model", "local_field", parse_field_model);
  c.symbolic_mode_pairs = static_cast<int>(r.integer("symbolic_mode_pairs", 2, 1));
  c.max_terms = static_cast<std::size_t>(r.integer("max_terms", static_cast<long long>(algebra::kDefaultMaxTerms), 1));
  return c;
}

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::trace: return "trace";
    case Experiment::causality: return "causality";
    case Experiment::slope_fit: return "slope_fit";
    case Experiment::convergence: return "convergence";
    case Experiment::commutator_check: return "commutator_check";
    case Experiment::theory_curves: return "theory_curves";
  }
  return "?";
}

ConfigError::ConfigError(ConfigErrorKind kind, std::string key, const std::string& message)
    : Error(message), kind_(kind), key_(std::move(key)) {}

RunConfig parse_config(std::string_view json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(ConfigErrorKind::parse, "", std::string("parse error: ") + e.what());
  }
  return from_json(doc);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(ConfigErrorKind::missing_file, "", "cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_to_json(const RunConfig& c, int indent) {
  const auto& p = c.physical;
  ordered_json doc;
  doc["omega"] = p.omega;
  if (p.omega_B) doc["omega_B"] = *p.omega_B;
  doc["d_A"] = p.d_A;
  doc["d_B"] = p.d_B;
  doc["x_A"] = p.x_A;
  doc["x_B"] = p.x_B;
  doc["c"] = p.speed;
  doc["N"] = p.normalization;
  doc["M"] = c.grid.modes;
  doc["k_max"] = c.grid.k_max;
  doc["n_max"] = c.grid.n_max;
  doc["t_max"] = c.t_max;
  doc["samples"] = c.samples;
  doc["dt"] = c.propagator.dt;
  doc["tolerance"] = c.propagator.tolerance;
  doc["krylov_dim"] = c.propagator.krylov_dim;
  doc["initial_state"] = std::string(model::to_string(c.initial));
  doc["experiment"] = std::string(to_string(c.experiment));
  doc["output_dir"] = c.output_dir;
  doc["variation"] = std::string(causality::to_string(c.variation));
  doc["margin"] = c.margin;
  doc["omega_shift_factor"] = c.omega_shift_factor;
  if (c.fit_lo) doc["fit_lo"] = *c.fit_lo;
  if (c.fit_hi) doc["fit_hi"] = *c.fit_hi;
  doc["ladder"] = ordered_json::array();
  for (const auto& g : c.ladder) doc["ladder"].push_back(grid_json(g));
  doc["depth"] = c.depth;
  doc["field_model"] = std::string(field_model_name(c.field_model));
  doc["symbolic_mode_pairs"] = c.symbolic_mode_pairs;
  doc["max_terms"] = c.max_terms;
  return doc.dump(indent);
}

std::string apply_override(std::string_view json_text, std::string_view key, std::string_view value) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(ConfigErrorKind::parse, "", std::string("parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError(ConfigErrorKind::parse, "", "config must be a JSON object");
  const std::string k(key);
  if (!kKeys.contains(k)) invalid(k, "unknown key");
  try {
    doc[k] = ordered_json::parse(value);
  } catch (const nlohmann::json::parse_error&) {
    doc[k] = std::string(value);
  }
  return doc.dump(2);
}

}  // namespace lightcone::cli
