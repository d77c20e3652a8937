// lightcone: run, validate and sweep experiment configs.

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lightcone/cli/config.hpp"
#include "lightcone/cli/run.hpp"
#include "lightcone/version.hpp"

namespace fs = std::filesystem;
using namespace lightcone;

namespace {

struct Vary {
  std::string key;
  std::vector<std::string> values;
};

Vary parse_vary(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
    throw ArgumentError("--vary expects key=v1,v2,... (got '" + spec + "')");
  }
  Vary v{spec.substr(0, eq), {}};
  std::stringstream ss(spec.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) v.values.push_back(item);
  }
  if (v.values.empty()) throw ArgumentError("--vary " + v.key + " has no values");
  return v;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw cli::ConfigError(cli::ConfigErrorKind::missing_file, "", "cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_result(const cli::RunResult& r) {
  for (const auto& c : r.checks) {
    std::cout << (c.pass ? "  pass  " : "  FAIL  ") << c.name << "  value=" << c.value << "  limit=" << c.limit << "\n";
  }
  std::cout << (r.pass() ? "ok" : "failed") << ": wrote";
  for (const auto& f : r.files) std::cout << ' ' << f.string();
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit light-cone simulator"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  unsigned threads = 1;
  bool emit_plot = false;
  std::vector<std::string> vary_specs;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "Output directory (default: config output_dir, then $LIGHTCONE_OUT)");
    sub->add_option("--threads", threads, "Worker threads for paired and laddered runs")->check(CLI::PositiveNumber);
    sub->add_flag("--emit-plot", emit_plot, "Also write a gnuplot script");
  };

  auto* run_cmd = app.add_subcommand("run", "Run the experiment described by a config");
  add_common(run_cmd);
  auto* validate_cmd = app.add_subcommand("validate", "Load and validate a config, print it with defaults");
  validate_cmd->add_option("config", config_path, "JSON config file")->required();
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a config once per value combination");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--vary", vary_specs, "key=v1,v2,... (repeatable; combinations form a grid)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitUsage;
  }

  try {
    cli::RunOptions options;
    options.threads = threads;
    options.emit_plot = emit_plot;
    if (!out_dir.empty()) options.out_dir = out_dir;

    if (*validate_cmd) {
      const auto config = cli::load_config(config_path);
      std::cout << cli::config_to_json(config) << "\n";
      return cli::kExitOk;
    }
    if (*run_cmd) {
      const auto result = cli::run(cli::load_config(config_path), options);
      print_result(result);
      return result.exit_code();
    }

    std::vector<Vary> varies;
    for (const auto& spec : vary_specs) varies.push_back(parse_vary(spec));
    const std::string base_text = read_file(config_path);
    const fs::path base_dir = cli::resolve_output_dir(cli::parse_config(base_text), options);

    // Validate every combination before running any of them.
    std::vector<std::pair<std::string, cli::RunConfig>> jobs;
    std::vector<std::size_t> idx(varies.size(), 0);
    while (true) {
      std::string text = base_text;
      std::string label;
      for (std::size_t i = 0; i < varies.size(); ++i) {
        text = cli::apply_override(text, varies[i].key, varies[i].values[idx[i]]);
        label += (i ? "_" : "") + varies[i].key + "=" + varies[i].values[idx[i]];
      }
      jobs.emplace_back(label, cli::parse_config(text));
      std::size_t k = 0;
      while (k < varies.size() && ++idx[k] == varies[k].values.size()) idx[k++] = 0;
      if (k == varies.size()) break;
    }

    int status = cli::kExitOk;
    for (auto& [label, config] : jobs) {
      cli::RunOptions job_options = options;
      job_options.out_dir = base_dir / label;
      std::cout << "[" << label << "]\n";
      const auto result = cli::run(config, job_options);
      print_result(result);
      if (!result.pass()) status = result.exit_code();
    }
    return status;
  } catch (const std::exception& e) {
    std::cerr << "lightcone: " << e.what() << "\n";
    return cli::exit_code_for_current_exception();
  }
}
