#include "lightcone/causality/causality.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <memory>
#include <sstream>
#include <string>

#include "lightcone/error.hpp"
#include "lightcone/model/field_grid.hpp"
#include "lightcone/model/fock_basis.hpp"

namespace lightcone::causality {

double PhysicalParams::separation() const { return std::abs(x_B - x_A); }
double PhysicalParams::cone_time() const { return separation() / speed; }

model::QubitPair PhysicalParams::qubits() const {
  return model::QubitPair{{omega, d_A, x_A}, {omega_b(), d_B, x_B}};
}

void PhysicalParams::validate() const {
  qubits().a.validate("qubit A");
  qubits().b.validate("qubit B");
  if (!std::isfinite(speed) || speed <= 0.0) throw ArgumentError("c must be positive");
  if (!std::isfinite(normalization) || normalization <= 0.0) throw ArgumentError("N must be positive");
}

std::string_view to_string(Variation v) {
  switch (v) {
    case Variation::remove_B: return "remove_B";
    case Variation::shift_omega_B: return "shift_omega_B";
    case Variation::flip_dB_sign: return "flip_dB_sign";
  }
  return "?";
}

Variation parse_variation(std::string_view text) {
  if (text == "remove_B") return Variation::remove_B;
  if (text == "shift_omega_B") return Variation::shift_omega_B;
  if (text == "flip_dB_sign") return Variation::flip_dB_sign;
  throw ArgumentError("unknown variation '" + std::string(text) + "'");
}

double wrap_limit(const PhysicalParams& params, const GridSpec& grid) {
  const double dk = 2.0 * grid.k_max / grid.modes;
  const double box = 2.0 * std::numbers::pi / dk;
  return (box - params.separation()) / params.speed;
}

Run simulate(const PhysicalParams& params, const GridSpec& spec, std::span<const double> t_grid,
             model::InitialState initial, const evolve::PropagatorConfig& cfg) {
  params.validate();
  const auto grid = model::FieldGrid::build(spec.modes, spec.k_max, params.speed, params.normalization);
  auto basis = std::make_shared<const model::FockBasis>(model::FockBasis::build(spec.modes, spec.n_max));
  const auto h = model::assemble_hamiltonian(params.qubits(), grid, basis);
  Run run;
  run.dimension = h.dimension();
  run.box_length = grid.box_length();
  run.trace = observables::probability_trace(h, model::initial_state(basis, initial), t_grid, cfg, &run.diagnostics);
  return run;
}

namespace {

PhysicalParams vary(PhysicalParams p, Variation v, double shift_factor) {
  switch (v) {
    case Variation::remove_B: p.d_B = 0.0; break;
    case Variation::shift_omega_B: p.omega_B = p.omega_b() * shift_factor; break;
    case Variation::flip_dB_sign: p.d_B = -p.d_B; break;
  }
  return p;
}

void summarize(CausalityReport& report, const PairedOptions& options) {
  const auto& a = report.reference.trace;
  const auto& b = report.varied.trace;
  report.times = a.times;
  report.epsilon.resize(a.size());
  report.pre_cone_max = 0.0;
  report.post_cone_max.reset();
  const double pre_limit = report.cone_time * (1.0 - options.margin);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double eps = std::abs(a.p_eA[i] - b.p_eA[i]);
    report.epsilon[i] = eps;
    if (a.times[i] < pre_limit) report.pre_cone_max = std::max(report.pre_cone_max, eps);
    if (a.times[i] > report.cone_time) report.post_cone_max = std::max(report.post_cone_max.value_or(0.0), eps);
  }
  report.noise_floor = options.propagator.tolerance *
                       static_cast<double>(report.reference.diagnostics.stats.steps + report.varied.diagnostics.stats.steps);
}

}  // namespace

CausalityReport run_paired(const PhysicalParams& params, const GridSpec& grid, std::span<const double> t_grid,
                           Variation variation, const PairedOptions& options) {
  params.validate();
  if (!(options.margin >= 0.0 && options.margin < 1.0)) throw ArgumentError("margin must lie in [0, 1)");
  if (!std::isfinite(options.omega_shift_factor) || options.omega_shift_factor <= 0.0) {
    throw ArgumentError("omega_shift_factor must be positive");
  }
  if (grid.modes < 2 || grid.modes % 2 != 0) throw ArgumentError("mode count must be even and at least 2");
  if (!(grid.k_max > 0.0)) throw ArgumentError("k_max must be positive");
  const double limit = wrap_limit(params, grid);
  if (!t_grid.empty() && !(t_grid.back() < limit)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "t_max = " << t_grid.back() << " reaches periodic images; it must stay below (L - r)/c = " << limit;
    throw ArgumentError(msg.str());
  }

  const PhysicalParams other = vary(params, variation, options.omega_shift_factor);
  CausalityReport report;
  report.variation = variation;
  report.cone_time = params.cone_time();
  report.margin = options.margin;
  if (options.threads > 1) {
    auto fut = std::async(std::launch::async, [&] { return simulate(other, grid, t_grid, options.initial, options.propagator); });
    report.reference = simulate(params, grid, t_grid, options.initial, options.propagator);
    report.varied = fut.get();
  } else {
    report.reference = simulate(params, grid, t_grid, options.initial, options.propagator);
    report.varied = simulate(other, grid, t_grid, options.initial, options.propagator);
  }
  summarize(report, options);
  return report;
}

double cross_term_slope_fit(const PhysicalParams& params, const observables::ProbabilityTrace& plus_dB,
                            const observables::ProbabilityTrace& minus_dB, FitWindow window) {
  if (plus_dB.times != minus_dB.times) throw ArgumentError("paired traces must share the time grid");
  const double cone = params.cone_time();
  if (!(window.lo >= cone)) throw ArgumentError("fit window starts before the light cone");
  if (!(window.hi > window.lo)) throw ArgumentError("fit window is empty");
  if (plus_dB.times.empty() || window.hi > plus_dB.times.back() * (1.0 + 1e-12)) {
    throw ArgumentError("fit window extends past the end of the traces");
  }
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < plus_dB.size(); ++i) {
    const double t = plus_dB.times[i];
    if (t <= cone || t < window.lo || t > window.hi) continue;
    const double odd = 0.5 * (plus_dB.p_eA[i] - minus_dB.p_eA[i]);
    st += t;
    sy += odd;
    stt += t * t;
    sty += t * odd;
    ++n;
  }
  if (n < 4) throw ArgumentError("fit window holds " + std::to_string(n) + " samples; at least 4 are required");
  const double nn = static_cast<double>(n);
  return (nn * sty - st * sy) / (nn * stt - st * st);
}

CausalityReport convergence_study(const PhysicalParams& params, const std::vector<GridSpec>& ladder,
                                  std::span<const double> t_grid, Variation variation, const PairedOptions& options) {
  if (ladder.empty()) throw ArgumentError("convergence ladder is empty");
  std::vector<CausalityReport> reports(ladder.size());
  // Ladder rungs are independent; run them concurrently when allowed and
  // keep the pair itself sequential so the thread budget is not exceeded.
  PairedOptions inner = options;
  inner.threads = 1;
  const unsigned workers = std::max(1u, options.threads);
  for (std::size_t start = 0; start < ladder.size(); start += workers) {
    std::vector<std::future<CausalityReport>> pending;
    const std::size_t stop = std::min(ladder.size(), start + workers);
    for (std::size_t i = start; i < stop; ++i) {
      if (workers == 1) {
        reports[i] = run_paired(params, ladder[i], t_grid, variation, inner);
      } else {
        pending.push_back(std::async(std::launch::async, [&, i] { return run_paired(params, ladder[i], t_grid, variation, inner); }));
      }
    }
    for (std::size_t i = 0; i < pending.size(); ++i) reports[start + i] = pending[i].get();
  }

  CausalityReport out = std::move(reports.back());
  out.convergence.clear();
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const auto& r = i + 1 == ladder.size() ? out : reports[i];
    out.convergence.push_back({ladder[i], r.reference.dimension, r.pre_cone_max, r.post_cone_max, r.noise_floor});
  }
  out.monotone = true;
  for (std::size_t i = 1; i < out.convergence.size(); ++i) {
    const auto& prev = out.convergence[i - 1];
    const auto& cur = out.convergence[i];
    if (cur.pre_cone_max > std::max(prev.pre_cone_max, 2.0 * cur.noise_floor)) out.monotone = false;
  }
  return out;
}

}  // namespace lightcone::causality
