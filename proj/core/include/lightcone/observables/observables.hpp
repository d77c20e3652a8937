#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "lightcone/atom.hpp"
#include "lightcone/evolve/propagator.hpp"
#include "lightcone/model/field_grid.hpp"
#include "lightcone/model/hamiltonian.hpp"
#include "lightcone/model/state.hpp"

namespace lightcone::observables {

using model::StateVector;

enum class Axis { x, y, z };

/// ⟨ψ|e_i⟩⟨e_i|ψ⟩ summed over the photon sector.
double excitation_probability(const StateVector& psi, Atom atom);
double ground_probability(const StateVector& psi, Atom atom);

/// ⟨ψ|σ_A^{op_a} σ_B^{op_b}|ψ⟩. Throws InvariantViolation if the imaginary
/// part exceeds 1e-10.
double two_atom_correlator(const StateVector& psi, Axis op_a, Axis op_b);

/// ⟨ψ|E(x)|ψ⟩ at each position, E(x) = Σ_j [i g_j e^{i k_j x} a_j + h.c.].
/// Throws ArgumentError when the grid and the state's basis disagree on M.
std::vector<double> field_expectation_profile(const StateVector& psi, const model::FieldGrid& grid,
                                              std::span<const double> positions);

/// ⟨ψ|H|ψ⟩ (real part; H is Hermitian).
double energy_expectation(const model::SparseHamiltonian& h, const StateVector& psi);

struct ProbabilityTrace {
  std::vector<double> times;
  std::vector<double> p_eA;
  std::vector<double> p_eB;
  std::map<std::string, double> metadata;

  std::size_t size() const { return times.size(); }
  /// Throws InvariantViolation on unequal lengths or a probability outside [0, 1] beyond 1e-9.
  void check() const;
};

struct TraceDiagnostics {
  double max_norm_defect = 0.0;     // max |‖ψ‖² − 1|
  double max_energy_drift = 0.0;    // max |E(t) − E(0)| / max(|E(0)|, ‖Hψ0‖)
  evolve::EvolveStats stats;
};

/// Evolves psi0 over t_grid and records P_eA, P_eB, norm and energy.
ProbabilityTrace probability_trace(const model::SparseHamiltonian& h, const StateVector& psi0,
                                   std::span<const double> t_grid, const evolve::PropagatorConfig& cfg,
                                   TraceDiagnostics* diagnostics = nullptr);

}  // namespace lightcone::observables
