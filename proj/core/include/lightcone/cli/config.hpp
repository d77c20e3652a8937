#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lightcone/algebra/hamiltonian_symbolic.hpp"
#include "lightcone/causality/causality.hpp"
#include "lightcone/error.hpp"
#include "lightcone/evolve/propagator.hpp"
#include "lightcone/model/state.hpp"

namespace lightcone::cli {

enum class Experiment { trace, causality, slope_fit, convergence, commutator_check, theory_curves };

std::string_view to_string(Experiment e);

/// Everything one invocation needs. Loaded from a flat JSON object; see
/// docs/formats.md for the key list.
struct RunConfig {
  causality::PhysicalParams physical;
  causality::GridSpec grid;
  double t_max = 0.3;
  std::size_t samples = 61;
  evolve::PropagatorConfig propagator;
  model::InitialState initial = model::InitialState::switch_state;
  Experiment experiment = Experiment::trace;
  std::string output_dir;

  // causality, slope_fit, convergence
  causality::Variation variation = causality::Variation::remove_B;
  double margin = 0.1;
  double omega_shift_factor = 2.0;
  std::optional<double> fit_lo;  // defaults to r/c
  std::optional<double> fit_hi;  // defaults to t_max
  std::vector<causality::GridSpec> ladder;

  // commutator_check
  int depth = 4;
  algebra::FieldModel field_model = algebra::FieldModel::local_field;
  int symbolic_mode_pairs = 2;
  std::size_t max_terms = algebra::kDefaultMaxTerms;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

enum class ConfigErrorKind { missing_file, parse, validation };

class ConfigError : public Error {
 public:
  ConfigError(ConfigErrorKind kind, std::string key, const std::string& message);
  ConfigErrorKind kind() const { return kind_; }
  /// Offending key, empty for file and parse errors.
  const std::string& key() const { return key_; }

 private:
  ConfigErrorKind kind_;
  std::string key_;
};

RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(std::string_view json_text);

/// Every key with its resolved value; parse_config(config_to_json(c)) == c.
std::string config_to_json(const RunConfig& config, int indent = 2);

/// Replaces (or inserts) one top-level key. The value is read as JSON when
/// possible and as a bare string otherwise.
std::string apply_override(std::string_view json_text, std::string_view key, std::string_view value);

}  // namespace lightcone::cli
