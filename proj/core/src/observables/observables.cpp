#include "lightcone/observables/observables.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "lightcone/error.hpp"

namespace lightcone::observables {

namespace {

using cd = std::complex<double>;

// Qubit bit of atom within the basis index (A is the high bit).
std::size_t bit(Atom atom) { return atom == Atom::A ? 2u : 1u; }

// σ^axis acting on a single qubit level: returns (target level, amplitude).
std::pair<int, cd> pauli(Axis axis, int level) {
  switch (axis) {
    case Axis::x: return {1 - level, 1.0};
    // Levels (g, e) = (0, 1): σy|e⟩ = i|g⟩, σy|g⟩ = -i|e⟩.
    case Axis::y: return {1 - level, level == 1 ? cd(0.0, 1.0) : cd(0.0, -1.0)};
    case Axis::z: return {level, level == 1 ? 1.0 : -1.0};
  }
  return {level, 0.0};
}

}  // namespace

double excitation_probability(const StateVector& psi, Atom atom) {
  const std::size_t mask = bit(atom);
  double p = 0.0;
  for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) {
    if (static_cast<std::size_t>(i) & mask) p += std::norm(psi.amplitudes[i]);
  }
  return p;
}

double ground_probability(const StateVector& psi, Atom atom) {
  const std::size_t mask = bit(atom);
  double p = 0.0;
  for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) {
    if (!(static_cast<std::size_t>(i) & mask)) p += std::norm(psi.amplitudes[i]);
  }
  return p;
}

double two_atom_correlator(const StateVector& psi, Axis op_a, Axis op_b) {
  cd total = 0.0;
  const auto n = static_cast<std::size_t>(psi.amplitudes.size());
  for (std::size_t i = 0; i < n; ++i) {
    const cd amp = psi.amplitudes[static_cast<Eigen::Index>(i)];
    if (amp == cd(0.0, 0.0)) continue;
    const std::size_t config = i / 4;
    const int la = static_cast<int>((i >> 1) & 1u);
    const int lb = static_cast<int>(i & 1u);
    const auto [ta, ca] = pauli(op_a, la);
    const auto [tb, cb] = pauli(op_b, lb);
    const std::size_t j = 4 * config + 2 * static_cast<std::size_t>(ta) + static_cast<std::size_t>(tb);
    total += std::conj(psi.amplitudes[static_cast<Eigen::Index>(j)]) * ca * cb * amp;
  }
  if (std::abs(total.imag()) > 1e-10) {
    throw InvariantViolation("correlator has imaginary part " + std::to_string(total.imag()));
  }
  return total.real();
}

std::vector<double> field_expectation_profile(const StateVector& psi, const model::FieldGrid& grid,
                                              std::span<const double> positions) {
  if (!psi.basis) throw ArgumentError("state has no basis");
  const auto& basis = *psi.basis;
  if (basis.mode_count() != grid.mode_count()) throw ArgumentError("grid and basis disagree on the mode count");
  const int modes = grid.mode_count();

  // ⟨a_j⟩ for every mode, from the photon-removing matrix elements.
  std::vector<cd> mean_a(static_cast<std::size_t>(modes), 0.0);
  std::vector<int> lowered;
  for (std::size_t config = 0; config < basis.config_count(); ++config) {
    const auto photons = basis.config_photons(config);
    for (std::size_t p = 0; p < photons.size(); ++p) {
      if (p > 0 && photons[p] == photons[p - 1]) continue;
      const int j = photons[p];
      lowered.assign(photons.begin(), photons.end());
      lowered.erase(lowered.begin() + static_cast<std::ptrdiff_t>(p));
      const std::size_t target = basis.config_index(lowered);
      const double occ = static_cast<double>(std::count(photons.begin(), photons.end(), j));
      const double root = std::sqrt(occ);
      for (std::size_t q = 0; q < 4; ++q) {
        const auto from = static_cast<Eigen::Index>(4 * config + q);
        const auto to = static_cast<Eigen::Index>(4 * target + q);
        mean_a[static_cast<std::size_t>(j)] += std::conj(psi.amplitudes[to]) * root * psi.amplitudes[from];
      }
    }
  }

  const auto k = grid.momenta();
  const auto g = grid.couplings();
  std::vector<double> out;
  out.reserve(positions.size());
  for (double x : positions) {
    double value = 0.0;
    for (int j = 0; j < modes; ++j) {
      // i g e^{ikx} ⟨a⟩ + c.c. = 2 Re(i g e^{ikx} ⟨a⟩)
      value += 2.0 * (cd(0.0, g[j]) * std::polar(1.0, k[j] * x) * mean_a[static_cast<std::size_t>(j)]).real();
    }
    out.push_back(value);
  }
  return out;
}

double energy_expectation(const model::SparseHamiltonian& h, const StateVector& psi) {
  if (psi.dimension() != h.dimension()) throw ArgumentError("state dimension does not match the Hamiltonian");
  return psi.amplitudes.dot(h.matrix() * psi.amplitudes).real();
}

void ProbabilityTrace::check() const {
  if (p_eA.size() != times.size() || p_eB.size() != times.size()) {
    throw InvariantViolation("probability trace columns have unequal lengths");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (double p : {p_eA[i], p_eB[i]}) {
      if (!(p >= -1e-9 && p <= 1.0 + 1e-9)) {
        throw InvariantViolation("probability " + std::to_string(p) + " outside [0, 1] at t = " + std::to_string(times[i]));
      }
    }
  }
}

ProbabilityTrace probability_trace(const model::SparseHamiltonian& h, const StateVector& psi0,
                                   std::span<const double> t_grid, const evolve::PropagatorConfig& cfg,
                                   TraceDiagnostics* diagnostics) {
  ProbabilityTrace trace;
  trace.times.reserve(t_grid.size());
  TraceDiagnostics diag;
  const double e0 = energy_expectation(h, psi0);
  const double scale = std::max(std::abs(e0), (h.matrix() * psi0.amplitudes).norm());
  diag.stats = evolve::evolve_observed(h, psi0, t_grid, cfg, [&](std::size_t, double t, const StateVector& psi) {
    trace.times.push_back(t);
    trace.p_eA.push_back(excitation_probability(psi, Atom::A));
    trace.p_eB.push_back(excitation_probability(psi, Atom::B));
    diag.max_norm_defect = std::max(diag.max_norm_defect, std::abs(psi.amplitudes.squaredNorm() - 1.0));
    if (scale > 0.0) {
      diag.max_energy_drift = std::max(diag.max_energy_drift, std::abs(energy_expectation(h, psi) - e0) / scale);
    }
  });
  trace.check();
  if (diagnostics) *diagnostics = diag;
  return trace;
}

}  // namespace lightcone::observables
