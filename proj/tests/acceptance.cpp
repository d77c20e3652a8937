// Acceptance suite. Prints one PASS/FAIL line per criterion, followed by
// indented detail lines. Usage: acceptance [--criterion N]

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lightcone/algebra/hamiltonian_symbolic.hpp"
#include "lightcone/algebra/text.hpp"
#include "lightcone/causality/causality.hpp"
#include "lightcone/evolve/dense_oracle.hpp"
#include "lightcone/evolve/propagator.hpp"
#include "lightcone/observables/observables.hpp"
#include "lightcone/theory/theory.hpp"

using namespace lightcone;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
  std::vector<std::string> details;
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Desk-scale configuration: M = 64, k_max = 20Ω/c, n_max = 2, d = 0.02, r/c = 0.15/Ω.
causality::PhysicalParams desk_params() { return causality::PhysicalParams{}; }
constexpr causality::GridSpec kDeskGrid{64, 20.0, 2};
// Resolved grid for the post-cone slope: the cutoff is what controls the
// slope, the box only has to exceed r + c·t_max.
constexpr causality::GridSpec kConvergedGrid{128, 400.0, 2};
constexpr causality::GridSpec kConvergedCheckGrid{256, 400.0, 2};

std::vector<double> desk_times() { return evolve::uniform_time_grid(0.3, 61); }

struct Built {
  std::shared_ptr<const model::FockBasis> basis;
  model::SparseHamiltonian h;
};

Built build(const causality::PhysicalParams& p, const causality::GridSpec& g) {
  auto basis = std::make_shared<const model::FockBasis>(model::FockBasis::build(g.modes, g.n_max));
  auto grid = model::FieldGrid::build(g.modes, g.k_max, p.speed, p.normalization);
  auto h = model::assemble_hamiltonian(p.qubits(), grid, basis);
  return {basis, std::move(h)};
}

Outcome criterion_1() {
  Outcome o;
  const auto run = causality::simulate(desk_params(), kDeskGrid, desk_times(), model::InitialState::switch_state, {});
  const double da = std::abs(run.trace.p_eA[0] - 0.5), db = std::abs(run.trace.p_eB[0] - 0.5);
  o.pass = da <= 1e-12 && db <= 1e-12;
  o.summary = fmt("switch state P_eA(0) = %.17g, P_eB(0) = %.17g (tol 1e-12)", run.trace.p_eA[0], run.trace.p_eB[0]);
  return o;
}

Outcome criterion_2() {
  using namespace algebra;
  Outcome o;
  const auto local = HamiltonianSymbolic::local_field();
  bool support_ok = true;
  for (const char* seed : {"sx[A]", "sy[A]"}) {
    std::string line = std::string("local field, seed ") + seed + ": support by depth";
    auto expr = parse_expr(seed);
    for (int d = 1; d <= 6; ++d) {
      expr = local.commutator_with(expr);
      const auto sup = support(expr);
      const bool only_a = sup == std::set<Atom>{Atom::A};
      support_ok = support_ok && only_a;
      line += fmt(" %d:%s(%zu terms)", d, only_a ? "{A}" : (sup.contains(Atom::B) ? "{A,B}" : "{}"), expr.size());
    }
    o.details.push_back(line);
  }
  const auto x1 = local.commutator_with(parse_expr("sx[A]"));
  const auto y1 = local.commutator_with(parse_expr("sy[A]"));
  const bool x_ok = x1 == parse_expr("i*Omega*sy[A]");
  const bool y_ok = y1 == parse_expr("-i*Omega*sx[A] + 2*i*dA*sz[A]*E[A]");
  o.details.push_back("[H, sx[A]] = " + to_string(x1));
  o.details.push_back("[H, sy[A]] = " + to_string(y1));

  // Same depth-1 statements with the field expanded over explicit modes.
  const auto discrete = HamiltonianSymbolic::discrete_modes(2);
  const bool dx_ok = discrete.commutator_with(parse_expr("sx[A]")) == parse_expr("i*Omega*sy[A]");
  const bool dy_ok = discrete.commutator_with(parse_expr("sy[A]")) ==
                     parse_expr("-i*Omega*sx[A]") + parse_expr("2*i*dA*sz[A]") * discrete.field_at(Atom::A);
  o.details.push_back(fmt("discrete modes (2 pairs), depth-1 equalities: %s", dx_ok && dy_ok ? "exact" : "MISMATCH"));
  for (const char* seed : {"sx[A]", "sy[A]"}) {
    int first_b = -1;
    for (int d = 1; d <= 4 && first_b < 0; ++d) {
      if (nested_commutator_support(parse_expr(seed), HamiltonianSymbolic::discrete_modes(1), d).contains(Atom::B)) first_b = d;
    }
    o.details.push_back(fmt("diagnostic: discrete modes (1 pair), seed %s first reaches B at depth %d "
                            "via cross-site field commutators", seed, first_b));
  }
  o.pass = support_ok && x_ok && y_ok && dx_ok && dy_ok;
  o.summary = fmt("nested commutators of sx[A], sy[A] to depth 6 stay on {A}: %s; depth-1 forms exact: %s",
                  support_ok ? "yes" : "no", x_ok && y_ok && dx_ok && dy_ok ? "yes" : "no");
  return o;
}

struct RandomInstance {
  causality::PhysicalParams params;
  causality::GridSpec grid;
  std::vector<double> times;
  std::string label;
};

std::vector<RandomInstance> random_instances() {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<RandomInstance> out;
  const std::vector<std::pair<int, int>> shapes = {{2, 1},  {2, 3},  {4, 1},  {4, 2},  {6, 2},  {8, 1},  {8, 2},
                                                   {10, 2}, {12, 2}, {14, 1}, {16, 2}, {18, 2}, {20, 2}, {24, 2},
                                                   {4, 4},  {6, 3},  {8, 3},  {10, 3}, {30, 1}, {28, 2}, {32, 2},
                                                   {36, 2}, {64, 1}, {42, 2}};
  for (auto [m, n] : shapes) {
    RandomInstance r;
    r.grid = {m, 0.5 + 20.0 * u(rng), n};
    auto& p = r.params;
    p.omega = 0.5 + 1.5 * u(rng);
    p.omega_B = 0.5 + 1.5 * u(rng);
    p.d_A = 0.4 * (u(rng) - 0.5);
    p.d_B = 0.4 * (u(rng) - 0.5);
    p.x_A = u(rng) - 0.5;
    p.x_B = p.x_A + 2.0 * u(rng);
    p.speed = 0.5 + u(rng);
    p.normalization = 0.5 + 1.5 * u(rng);
    r.times = evolve::uniform_time_grid(0.5 + 2.5 * u(rng), 5);
    r.label = fmt("M=%d n_max=%d k_max=%.3g", m, n, r.grid.k_max);
    out.push_back(r);
  }
  return out;
}

struct Trajectory {
  std::string label;
  double norm = 0.0;
  double energy = 0.0;
};

Outcome criterion_3(std::vector<Trajectory>* trajectories = nullptr) {
  Outcome o;
  double worst = 0.0;
  std::size_t count = 0, largest = 0;
  std::mt19937 rng(7);
  std::normal_distribution<double> n;
  for (const auto& inst : random_instances()) {
    const auto sys = build(inst.params, inst.grid);
    if (sys.h.dimension() > evolve::DenseOracle::kMaxDimension) continue;
    largest = std::max(largest, sys.h.dimension());
    const evolve::DenseOracle oracle(sys.h);
    // Alternate between the switch state and a random normalized state.
    model::StateVector psi = model::switch_state(sys.basis);
    if (count % 2 == 1) {
      for (auto& a : psi.amplitudes) a = {n(rng), n(rng)};
      psi.amplitudes.normalize();
    }
    double inst_worst = 0.0;
    Trajectory traj{inst.label};
    const double e0 = observables::energy_expectation(sys.h, psi);
    const double scale = std::max(std::abs(e0), (sys.h.matrix() * psi.amplitudes).norm());
    evolve::evolve_observed(sys.h, psi, inst.times, {}, [&](std::size_t, double t, const model::StateVector& s) {
      inst_worst = std::max(inst_worst, (s.amplitudes - oracle.propagate(psi, t).amplitudes).norm());
      traj.norm = std::max(traj.norm, std::abs(s.amplitudes.squaredNorm() - 1.0));
      traj.energy = std::max(traj.energy, std::abs(observables::energy_expectation(sys.h, s) - e0) / scale);
    });
    if (trajectories) trajectories->push_back(traj);
    worst = std::max(worst, inst_worst);
    ++count;
    o.details.push_back(fmt("%-32s dim %5zu  max 2-norm deviation %.3e", inst.label.c_str(), sys.h.dimension(), inst_worst));
  }
  o.pass = count >= 20 && worst <= 1e-8;
  o.summary = fmt("Krylov vs dense oracle on %zu random instances (dim up to %zu): max deviation %.3e (tol 1e-8)", count,
                  largest, worst);
  return o;
}

Outcome criterion_4() {
  Outcome o;
  std::vector<Trajectory> trajectories;
  criterion_3(&trajectories);
  const auto ts = desk_times();
  for (auto kind : {model::InitialState::switch_state, model::InitialState::eA_gB, model::InitialState::gA_eB}) {
    for (auto [label, params] : {std::pair{"desk", desk_params()}, std::pair{"desk without B", [] {
                                   auto p = desk_params();
                                   p.d_B = 0;
                                   return p;
                                 }()}}) {
      const auto run = causality::simulate(params, kDeskGrid, ts, kind, {});
      trajectories.push_back({std::string(label) + " / " + std::string(model::to_string(kind)),
                              run.diagnostics.max_norm_defect, run.diagnostics.max_energy_drift});
    }
  }
  {
    auto p = desk_params();
    p.d_A = p.d_B = 0.3;
    const auto run = causality::simulate(p, {32, 10.0, 3}, evolve::uniform_time_grid(5.0, 51), model::InitialState::switch_state, {});
    trajectories.push_back({"strong coupling d=0.3, M=32, n_max=3, t<=5", run.diagnostics.max_norm_defect,
                            run.diagnostics.max_energy_drift});
  }
  double norm = 0.0, energy = 0.0;
  for (const auto& t : trajectories) {
    norm = std::max(norm, t.norm);
    energy = std::max(energy, t.energy);
  }
  o.pass = norm <= 1e-9 && energy <= 1e-8;
  o.summary = fmt("%zu trajectories: max norm defect %.3e (tol 1e-9), max relative energy drift %.3e (tol 1e-8)",
                  trajectories.size(), norm, energy);
  o.details.push_back("energy drift is relative to max(|E0|, ||H psi0||); E0 = 0 for the switch state");
  return o;
}

Outcome criterion_5() {
  Outcome o;
  const auto ts = desk_times();
  // Doubling M at a fixed k_max·Δk = 2·k_max²/M product means k_max grows as sqrt(M).
  std::vector<causality::GridSpec> ladder;
  for (int f : {1, 2, 4}) ladder.push_back({64 * f, 20.0 * std::sqrt(static_cast<double>(f)), 2});
  const auto report = causality::convergence_study(desk_params(), ladder, ts, causality::Variation::remove_B);
  const double desk_pre = report.convergence.front().pre_cone_max;
  for (const auto& e : report.convergence) {
    o.details.push_back(fmt("M=%d k_max=%.4g dim %zu: pre_cone_max %.3e, post_cone_max %.3e, noise floor %.1e",
                            e.grid.modes, e.grid.k_max, e.dimension, e.pre_cone_max, e.post_cone_max.value_or(0.0),
                            e.noise_floor));
  }
  const bool bound = desk_pre <= 1e-6;
  o.pass = bound && report.monotone;
  o.summary = fmt("remove_B pre-cone discrepancy (t < 0.9 r/c) at desk config %.3e (tol 1e-6): %s; monotone under M doubling: %s",
                  desk_pre, bound ? "ok" : "exceeded", report.monotone ? "yes" : "no");
  // Diagnostic only: the same quantity with a much higher cutoff.
  const auto high = causality::run_paired(desk_params(), kConvergedGrid, ts, causality::Variation::remove_B);
  o.details.push_back(fmt("diagnostic: M=%d k_max=%.4g: pre_cone_max %.3e", kConvergedGrid.modes, kConvergedGrid.k_max,
                          high.pre_cone_max));
  return o;
}

Outcome criterion_6() {
  Outcome o;
  const auto ts = desk_times();
  const auto p = desk_params();
  const causality::FitWindow window{p.cone_time(), 0.3};
  const double predicted = 2.0 * std::numbers::pi * p.d_A * p.d_B * p.normalization * p.omega / p.speed;

  const auto sw = causality::run_paired(p, kConvergedGrid, ts, causality::Variation::flip_dB_sign);
  const double slope = causality::cross_term_slope_fit(p, sw.reference.trace, sw.varied.trace, window);
  const auto check = causality::run_paired(p, kConvergedCheckGrid, ts, causality::Variation::flip_dB_sign);
  const double slope_check = causality::cross_term_slope_fit(p, check.reference.trace, check.varied.trace, window);
  const auto desk = causality::run_paired(p, kDeskGrid, ts, causality::Variation::flip_dB_sign);
  const double slope_desk = causality::cross_term_slope_fit(p, desk.reference.trace, desk.varied.trace, window);

  causality::PairedOptions product;
  product.initial = model::InitialState::eA_gB;
  const auto pr = causality::run_paired(p, kConvergedGrid, ts, causality::Variation::flip_dB_sign, product);
  const double slope_product = causality::cross_term_slope_fit(p, pr.reference.trace, pr.varied.trace, window);
  const double floor = sw.pre_cone_max / (window.hi - window.lo);

  const double rel = std::abs(slope - predicted) / std::abs(predicted);
  const bool signed_ok = rel <= 0.10;
  const bool product_ok = std::abs(slope_product) <= floor;
  o.pass = signed_ok && product_ok;
  o.summary = fmt("switch-state slope %.5e vs predicted %.5e (ratio %.4f, tol 10%%): %s; product-state slope %.2e within noise floor %.2e: %s",
                  slope, predicted, slope / predicted, signed_ok ? "ok" : "mismatch", slope_product, floor,
                  product_ok ? "ok" : "exceeded");
  o.details.push_back(fmt("|slope| / predicted = %.4f", std::abs(slope) / predicted));
  o.details.push_back(fmt("grid M=%d k_max=%.4g: slope %.5e; M=%d k_max=%.4g: slope %.5e; desk grid: slope %.5e",
                          kConvergedGrid.modes, kConvergedGrid.k_max, slope, kConvergedCheckGrid.modes,
                          kConvergedCheckGrid.k_max, slope_check, slope_desk));
  o.details.push_back(fmt("second-order Dyson reference for the switch state: slope -> -2*pi*dA*dB*N*Omega*cos(Omega r/c)/c = %.5e",
                          -predicted * std::cos(p.omega * p.cone_time())));
  return o;
}

Outcome criterion_7() {
  Outcome o;
  auto p = desk_params();
  p.x_A = -0.075;
  p.x_B = 0.075;
  const auto run = causality::simulate(p, kDeskGrid, desk_times(), model::InitialState::switch_state, {});
  double worst = 0.0;
  for (std::size_t i = 0; i < run.trace.size(); ++i) worst = std::max(worst, std::abs(run.trace.p_eA[i] - run.trace.p_eB[i]));
  o.pass = worst <= 1e-8;
  o.summary = fmt("symmetric switch run: max_t |P_eA - P_eB| = %.3e (tol 1e-8)", worst);
  return o;
}

Outcome criterion_8() {
  Outcome o;
  const auto p = desk_params();
  const auto base = build(p, kDeskGrid);
  const auto ts = desk_times();
  const auto ref = observables::probability_trace(base.h, model::switch_state(base.basis), ts, {});
  bool ok = true;
  for (double s : {2.0, 0.5}) {
    auto q = p;
    q.normalization *= s * s;
    q.d_A /= s;
    q.d_B /= s;
    const auto scaled = build(q, kDeskGrid);
    const bool entries = Eigen::MatrixXcd(scaled.h.matrix()) == Eigen::MatrixXcd(base.h.matrix()) &&
                         scaled.h.matrix().nonZeros() == base.h.matrix().nonZeros();
    const auto trace = observables::probability_trace(scaled.h, model::switch_state(scaled.basis), ts, {});
    const bool traces = trace.p_eA == ref.p_eA && trace.p_eB == ref.p_eB;
    o.details.push_back(fmt("s = %g: Hamiltonian entry-identical %s, traces bitwise identical %s", s, entries ? "yes" : "no",
                            traces ? "yes" : "no"));
    ok = ok && entries && traces;
  }
  o.pass = ok;
  o.summary = "N -> s^2 N, d -> d/s leaves H and traces unchanged (s = 2, 0.5)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  const std::vector<std::function<Outcome()>> criteria = {criterion_1, [] { return criterion_2(); },
                                                          [] { return criterion_3(); }, criterion_4, criterion_5,
                                                          criterion_6, criterion_7, criterion_8};
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  bool all = true;
  for (int n = 1; n <= static_cast<int>(criteria.size()); ++n) {
    if (only && n != only) continue;
    Outcome o;
    try {
      o = criteria[n - 1]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("error: ") + e.what();
    }
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.summary << "\n";
    for (const auto& d : o.details) std::cout << "    " << d << "\n";
    std::cout.flush();
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
