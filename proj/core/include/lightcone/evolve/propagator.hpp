#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lightcone/model/hamiltonian.hpp"
#include "lightcone/model/state.hpp"

namespace lightcone::evolve {

using model::SparseHamiltonian;
using model::StateVector;

struct PropagatorConfig {
  double dt = 0.005;          // output sampling step; also the first internal step tried
  double tolerance = 1e-10;   // local error target per internal step
  int krylov_dim = 20;

  /// Throws ArgumentError unless dt > 0, 0 < tolerance < 1 and krylov_dim >= 2.
  void validate() const;
  friend bool operator==(const PropagatorConfig&, const PropagatorConfig&) = default;
};

struct EvolveStats {
  std::size_t steps = 0;
  std::size_t rejected = 0;
  std::size_t matvecs = 0;
};

/// {0, dt, 2dt, ...} up to and including t_max (the last sample is clamped to t_max).
std::vector<double> time_grid(double t_max, double dt);
/// `samples` equally spaced points on [0, t_max].
std::vector<double> uniform_time_grid(double t_max, std::size_t samples);

using Observer = std::function<void(std::size_t index, double t, const StateVector& psi)>;

/// Calls `observe` with e^{-iH t_m} psi0 for each t_m in ascending order.
/// Lanczos approximation of the exponential action with adaptive substeps;
/// internal steps never cross an output time. Throws ArgumentError for a
/// descending or negative grid or a dimension mismatch, and ConvergenceError
/// when the step size underflows.
EvolveStats evolve_observed(const SparseHamiltonian& h, const StateVector& psi0, std::span<const double> t_grid,
                            const PropagatorConfig& cfg, const Observer& observe);

std::vector<StateVector> evolve(const SparseHamiltonian& h, const StateVector& psi0, std::span<const double> t_grid,
                                const PropagatorConfig& cfg = {}, EvolveStats* stats = nullptr);

}  // namespace lightcone::evolve
