#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "lightcone/evolve/propagator.hpp"
#include "lightcone/model/hamiltonian.hpp"
#include "lightcone/model/state.hpp"
#include "lightcone/observables/observables.hpp"

namespace lightcone::causality {

struct PhysicalParams {
  double omega = 1.0;
  std::optional<double> omega_B;  // defaults to omega
  double d_A = 0.02;
  double d_B = 0.02;
  double x_A = 0.0;
  double x_B = 0.15;
  double speed = 1.0;
  double normalization = 1.0;

  double omega_b() const { return omega_B.value_or(omega); }
  friend bool operator==(const PhysicalParams&, const PhysicalParams&) = default;
  double separation() const;
  double cone_time() const;
  model::QubitPair qubits() const;
  void validate() const;
};

struct GridSpec {
  int modes = 64;
  double k_max = 20.0;
  int n_max = 2;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

enum class Variation { remove_B, shift_omega_B, flip_dB_sign };

std::string_view to_string(Variation v);
Variation parse_variation(std::string_view text);

struct PairedOptions {
  model::InitialState initial = model::InitialState::switch_state;
  evolve::PropagatorConfig propagator;
  double margin = 0.1;               // pre-cone band is t < (1 - margin)·r/c
  double omega_shift_factor = 2.0;   // Ω_B → factor·Ω_B for shift_omega_B
  unsigned threads = 1;              // >1 runs the two simulations concurrently
};

/// Physics run plus its propagator diagnostics.
struct Run {
  observables::ProbabilityTrace trace;
  observables::TraceDiagnostics diagnostics;
  std::size_t dimension = 0;
  double box_length = 0.0;
};

struct ConvergenceEntry {
  GridSpec grid;
  std::size_t dimension = 0;
  double pre_cone_max = 0.0;
  std::optional<double> post_cone_max;
  double noise_floor = 0.0;
};

struct CausalityReport {
  Variation variation = Variation::remove_B;
  std::vector<double> times;
  std::vector<double> epsilon;  // |P_eA(reference) - P_eA(varied)|
  double cone_time = 0.0;
  double margin = 0.1;
  double pre_cone_max = 0.0;
  std::optional<double> post_cone_max;
  /// Accumulated propagator error bound of the pair (tolerance × internal steps).
  double noise_floor = 0.0;
  Run reference;
  Run varied;
  std::vector<ConvergenceEntry> convergence;
  bool monotone = true;
};

/// Largest admissible t_max, (L − r)/c; later times see periodic images.
double wrap_limit(const PhysicalParams& params, const GridSpec& grid);

/// Single simulation of the physical system on the given grid.
Run simulate(const PhysicalParams& params, const GridSpec& grid, std::span<const double> t_grid,
             model::InitialState initial, const evolve::PropagatorConfig& cfg);

/// Two runs that differ only in atom B. Throws ArgumentError (quoting the
/// limit) when max(t_grid) ≥ (L − r)/c.
CausalityReport run_paired(const PhysicalParams& params, const GridSpec& grid, std::span<const double> t_grid,
                           Variation variation, const PairedOptions& options = {});

struct FitWindow {
  double lo = 0.0;
  double hi = 0.0;
};

/// Least-squares slope of [P_eA(+d_B) − P_eA(−d_B)]/2 over samples with
/// t > r/c and lo ≤ t ≤ hi. Throws ArgumentError if the window starts before
/// the cone, ends after the traces, or holds fewer than 4 samples.
double cross_term_slope_fit(const PhysicalParams& params, const observables::ProbabilityTrace& plus_dB,
                            const observables::ProbabilityTrace& minus_dB, FitWindow window);

/// Paired runs on each grid of the ladder; returns the finest report with the
/// per-grid record attached. `monotone` holds when every step satisfies
/// pre[i+1] ≤ max(pre[i], 2·noise_floor[i+1]).
CausalityReport convergence_study(const PhysicalParams& params, const std::vector<GridSpec>& ladder,
                                  std::span<const double> t_grid, Variation variation = Variation::remove_B,
                                  const PairedOptions& options = {});

}  // namespace lightcone::causality
