#include "lightcone/cli/run.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lightcone/algebra/text.hpp"
#include "lightcone/observables/observables.hpp"
#include "lightcone/theory/theory.hpp"
#include "lightcone/version.hpp"

namespace lightcone::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Outcome {
  Table table;
  ordered_json results = ordered_json::object();
  std::vector<Check> checks;
  std::string plot_title;
};

std::string header(const RunConfig& config) {
  std::ostringstream os;
  os << "# lightcone " << kVersion << "\n";
  os << "# config " << config_to_json(config, -1) << "\n";
  return os.str();
}

void add_check(Outcome& out, std::string name, bool pass, double value, double limit) {
  out.checks.push_back({std::move(name), pass, value, limit});
}

std::vector<double> times_of(const RunConfig& c) { return evolve::uniform_time_grid(c.t_max, c.samples); }

causality::PairedOptions paired_options(const RunConfig& c, unsigned threads) {
  causality::PairedOptions o;
  o.initial = c.initial;
  o.propagator = c.propagator;
  o.margin = c.margin;
  o.omega_shift_factor = c.omega_shift_factor;
  o.threads = threads;
  return o;
}

void conservation_checks(Outcome& out, const causality::Run& run, const std::string& label) {
  add_check(out, label + "norm", run.diagnostics.max_norm_defect <= 1e-9, run.diagnostics.max_norm_defect, 1e-9);
  add_check(out, label + "energy", run.diagnostics.max_energy_drift <= 1e-8, run.diagnostics.max_energy_drift, 1e-8);
}

ordered_json optional_json(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json report_json(const causality::CausalityReport& r) {
  ordered_json j;
  j["variation"] = std::string(causality::to_string(r.variation));
  j["cone_time"] = r.cone_time;
  j["margin"] = r.margin;
  j["pre_cone_max"] = r.pre_cone_max;
  j["post_cone_max"] = optional_json(r.post_cone_max);
  j["noise_floor"] = r.noise_floor;
  j["dimension"] = r.reference.dimension;
  j["box_length"] = r.reference.box_length;
  return j;
}

Outcome trace_experiment(const RunConfig& c) {
  Outcome out;
  const auto ts = times_of(c);
  const auto run = causality::simulate(c.physical, c.grid, ts, c.initial, c.propagator);
  out.table.columns = {"t", "p_eA", "p_eB"};
  for (std::size_t i = 0; i < ts.size(); ++i) out.table.rows.push_back({ts[i], run.trace.p_eA[i], run.trace.p_eB[i]});
  out.results["dimension"] = run.dimension;
  out.results["internal_steps"] = run.diagnostics.stats.steps;
  out.results["max_norm_defect"] = run.diagnostics.max_norm_defect;
  out.results["max_energy_drift"] = run.diagnostics.max_energy_drift;
  conservation_checks(out, run, "");
  if (c.initial == model::InitialState::switch_state && !ts.empty() && ts.front() == 0.0) {
    const double dev = std::max(std::abs(run.trace.p_eA[0] - 0.5), std::abs(run.trace.p_eB[0] - 0.5));
    add_check(out, "initial_probabilities", dev <= 1e-12, dev, 1e-12);
  }
  out.plot_title = "excitation probabilities";
  return out;
}

Outcome causality_experiment(const RunConfig& c, unsigned threads) {
  Outcome out;
  const auto ts = times_of(c);
  const auto r = causality::run_paired(c.physical, c.grid, ts, c.variation, paired_options(c, threads));
  out.table.columns = {"t", "p_eA_reference", "p_eA_varied", "epsilon"};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out.table.rows.push_back({ts[i], r.reference.trace.p_eA[i], r.varied.trace.p_eA[i], r.epsilon[i]});
  }
  out.results = report_json(r);
  conservation_checks(out, r.reference, "reference_");
  conservation_checks(out, r.varied, "varied_");
  out.plot_title = "B-dependence of P_eA";
  return out;
}

Outcome slope_fit_experiment(const RunConfig& c, unsigned threads) {
  Outcome out;
  const auto ts = times_of(c);
  const auto r = causality::run_paired(c.physical, c.grid, ts, causality::Variation::flip_dB_sign, paired_options(c, threads));
  const causality::FitWindow window{c.fit_lo.value_or(c.physical.cone_time()), c.fit_hi.value_or(c.t_max)};
  const double slope = causality::cross_term_slope_fit(c.physical, r.reference.trace, r.varied.trace, window);
  const theory::PerturbativePrediction prediction(
      theory::TheoryParams::from_positions(c.physical.d_A, c.physical.d_B, c.physical.normalization, c.physical.omega,
                                           c.physical.speed, c.physical.x_A, c.physical.x_B),
      c.initial);
  out.table.columns = {"t", "p_eA_plus", "p_eA_minus", "odd_part", "theory_p_eAB"};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double odd = 0.5 * (r.reference.trace.p_eA[i] - r.varied.trace.p_eA[i]);
    out.table.rows.push_back({ts[i], r.reference.trace.p_eA[i], r.varied.trace.p_eA[i], odd, prediction.p_eAB(ts[i])});
  }
  out.results = report_json(r);
  out.results["fit_window"] = {window.lo, window.hi};
  out.results["slope"] = slope;
  out.results["predicted_slope"] = prediction.cross_slope();
  out.results["ratio"] = prediction.cross_slope() != 0.0 ? ordered_json(slope / prediction.cross_slope()) : ordered_json(nullptr);
  conservation_checks(out, r.reference, "plus_");
  conservation_checks(out, r.varied, "minus_");
  out.plot_title = "d_B-odd part of P_eA";
  return out;
}

Outcome convergence_experiment(const RunConfig& c, unsigned threads) {
  Outcome out;
  const auto ts = times_of(c);
  const auto r = causality::convergence_study(c.physical, c.ladder, ts, c.variation, paired_options(c, threads));
  out.table.columns = {"t", "p_eA_reference", "p_eA_varied", "epsilon"};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out.table.rows.push_back({ts[i], r.reference.trace.p_eA[i], r.varied.trace.p_eA[i], r.epsilon[i]});
  }
  out.results = report_json(r);
  out.results["monotone"] = r.monotone;
  ordered_json ladder = ordered_json::array();
  for (const auto& e : r.convergence) {
    ladder.push_back({{"M", e.grid.modes}, {"k_max", e.grid.k_max}, {"n_max", e.grid.n_max}, {"dimension", e.dimension},
                      {"pre_cone_max", e.pre_cone_max}, {"post_cone_max", optional_json(e.post_cone_max)},
                      {"noise_floor", e.noise_floor}});
  }
  out.results["convergence"] = ladder;
  conservation_checks(out, r.reference, "finest_reference_");
  conservation_checks(out, r.varied, "finest_varied_");
  out.plot_title = "B-dependence of P_eA (finest grid)";
  return out;
}

Outcome commutator_experiment(const RunConfig& c) {
  Outcome out;
  const auto h = c.field_model == algebra::FieldModel::local_field
                     ? algebra::HamiltonianSymbolic::local_field()
                     : algebra::HamiltonianSymbolic::discrete_modes(c.symbolic_mode_pairs);
  const algebra::NestingLimits limits{std::max(c.depth, 0), c.max_terms};
  out.table.columns = {"seed", "depth", "terms", "support_A", "support_B"};
  ordered_json seeds = ordered_json::object();
  int seed_index = 0;
  for (const char* name : {"sx[A]", "sy[A]"}) {
    auto expr = algebra::parse_expr(name);
    ordered_json per_depth = ordered_json::array();
    bool only_a = true;
    for (int d = 1; d <= c.depth; ++d) {
      expr = h.commutator_with(expr, limits.max_terms);
      const auto sup = algebra::support(expr);
      out.table.rows.push_back({static_cast<double>(seed_index), static_cast<double>(d), static_cast<double>(expr.size()),
                                sup.contains(Atom::A) ? 1.0 : 0.0, sup.contains(Atom::B) ? 1.0 : 0.0});
      ordered_json labels = ordered_json::array();
      for (Atom a : sup) labels.push_back(std::string(1, atom_name(a)));
      per_depth.push_back({{"depth", d}, {"terms", expr.size()}, {"support", labels}});
      if (sup.contains(Atom::B)) only_a = false;
      if (d == 1) per_depth.back()["expression"] = algebra::to_string(expr);
    }
    seeds[name] = per_depth;
    add_check(out, std::string("support_excludes_B_") + name, only_a, only_a ? 0.0 : 1.0, 0.0);
    ++seed_index;
  }
  out.results["field_model"] = c.field_model == algebra::FieldModel::local_field ? "local_field" : "discrete_modes";
  out.results["seeds"] = seeds;
  out.plot_title = "nested commutator size";
  return out;
}

Outcome theory_experiment(const RunConfig& c) {
  Outcome out;
  const theory::PerturbativePrediction p(
      theory::TheoryParams::from_positions(c.physical.d_A, c.physical.d_B, c.physical.normalization, c.physical.omega,
                                           c.physical.speed, c.physical.x_A, c.physical.x_B),
      c.initial);
  out.table.columns = {"t", "p_eAA", "p_eAB", "p_eA", "p_eBB", "p_eBA", "p_eB"};
  for (double t : times_of(c)) {
    out.table.rows.push_back({t, p.p_eAA(t), p.p_eAB(t), p.p_eA_total_leading(t), p.p_eBB(t), p.p_eBA(t),
                              p.p_eB_total_leading(t)});
  }
  out.results["cone_time"] = p.params().cone_time();
  out.results["cross_slope"] = p.cross_slope();
  out.results["state_factor"] = theory::cross_term_root_state_factor(c.initial);
  out.plot_title = "leading-order predictions";
  return out;
}

std::string format_table(const RunConfig& config, const Table& table) {
  std::ostringstream os;
  os << header(config);
  os << "#";
  for (const auto& col : table.columns) os << ' ' << col;
  os << "\n";
  os.precision(17);
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << row[i];
    os << "\n";
  }
  return os.str();
}

std::string plot_script(const RunConfig& config, const Table& table, const std::string& title) {
  std::ostringstream os;
  os << header(config);
  os << "set datafile commentschars '#'\n";
  os << "set key left top\n";
  os << "set xlabel '" << table.columns.front() << "'\n";
  os << "set title '" << title << "'\n";
  if (config.experiment != Experiment::commutator_check && config.experiment != Experiment::theory_curves &&
      config.physical.cone_time() <= config.t_max) {
    os << "set arrow from " << config.physical.cone_time() << ", graph 0 to " << config.physical.cone_time()
       << ", graph 1 nohead dashtype 2\n";
  }
  os << "plot ";
  for (std::size_t i = 1; i < table.columns.size(); ++i) {
    os << (i > 1 ? ", \\\n     " : "") << "'trace.tsv' using 1:" << i + 1 << " with lines title '" << table.columns[i] << "'";
  }
  os << "\npause mouse close\n";
  return os.str();
}

class OutputGuard {
 public:
  explicit OutputGuard(fs::path dir) : dir_(std::move(dir)) {
    created_dir_ = !fs::exists(dir_);
    fs::create_directories(dir_);
  }
  ~OutputGuard() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& f : files_) fs::remove(f, ec);
    if (created_dir_ && fs::is_empty(dir_, ec)) fs::remove(dir_, ec);
  }
  void write(const std::string& name, const std::string& content) {
    const fs::path path = dir_ / name;
    files_.push_back(path);
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!f) throw Error("cannot write " + path.string());
  }
  const std::vector<fs::path>& files() const { return files_; }
  void commit() { committed_ = true; }

 private:
  fs::path dir_;
  bool created_dir_ = false;
  bool committed_ = false;
  std::vector<fs::path> files_;
};

}  // namespace

bool RunResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

fs::path resolve_output_dir(const RunConfig& config, const RunOptions& options) {
  if (options.out_dir) return *options.out_dir;
  if (!config.output_dir.empty()) return config.output_dir;
  if (const char* env = std::getenv(kOutputEnv); env && *env) return env;
  return "lightcone_out";
}

RunResult run(const RunConfig& config, const RunOptions& options) {
  const unsigned threads = std::max(1u, options.threads);
  Outcome out;
  switch (config.experiment) {
    case Experiment::trace: out = trace_experiment(config); break;
    case Experiment::causality: out = causality_experiment(config, threads); break;
    case Experiment::slope_fit: out = slope_fit_experiment(config, threads); break;
    case Experiment::convergence: out = convergence_experiment(config, threads); break;
    case Experiment::commutator_check: out = commutator_experiment(config); break;
    case Experiment::theory_curves: out = theory_experiment(config); break;
  }

  RunResult result;
  result.out_dir = resolve_output_dir(config, options);
  result.checks = out.checks;
  OutputGuard guard(result.out_dir);
  guard.write("trace.tsv", format_table(config, out.table));

  ordered_json summary;
  summary["tool"] = "lightcone";
  summary["version"] = kVersion;
  summary["config"] = ordered_json::parse(config_to_json(config));
  summary["experiment"] = std::string(to_string(config.experiment));
  summary["results"] = out.results;
  ordered_json checks = ordered_json::array();
  for (const auto& c : out.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"limit", c.limit}});
  }
  summary["checks"] = checks;
  summary["status"] = result.pass() ? "pass" : "fail";
  guard.write("summary.json", summary.dump(2) + "\n");
  if (options.emit_plot) guard.write("plot.gp", plot_script(config, out.table, out.plot_title));
  result.files = guard.files();
  guard.commit();
  return result;
}

int exit_code_for_current_exception() {
  try {
    throw;
  } catch (const ConfigError& e) {
    switch (e.kind()) {
      case ConfigErrorKind::missing_file: return kExitMissingFile;
      case ConfigErrorKind::parse: return kExitParse;
      case ConfigErrorKind::validation: return kExitValidation;
    }
  } catch (const InvariantViolation&) {
    return kExitInvariant;
  } catch (const ResourceLimitError&) {
    return kExitResource;
  } catch (const ConvergenceError&) {
    return kExitConvergence;
  } catch (const ArgumentError&) {
    return kExitArgument;
  } catch (...) {
  }
  return kExitFailure;
}

}  // namespace lightcone::cli
