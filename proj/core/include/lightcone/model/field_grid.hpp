#pragma once

#include <span>
#include <vector>

namespace lightcone::model {

/// Uniform, parity-symmetric momentum grid for the 1D field.
///
/// Modes are stored in ascending momentum order
/// k = -M/2·Δk, ..., -Δk, +Δk, ..., +M/2·Δk with Δk = 2·k_max/M, so mode j
/// and mode M-1-j carry opposite momenta. The zero mode is excluded (its
/// coupling vanishes). Each mode has frequency ω_j = c·|k_j| and coupling
/// amplitude g_j = sqrt(N·ω_j·Δk), the discrete stand-in for sqrt(N ω_k) dk.
class FieldGrid {
 public:
  /// Throws ArgumentError unless mode_count is even and ≥ 2 and k_max,
  /// speed and normalization are finite and positive.
  static FieldGrid build(int mode_count, double k_max, double speed, double normalization);

  int mode_count() const { return static_cast<int>(momenta_.size()); }
  double k_max() const { return k_max_; }
  double speed() const { return speed_; }
  double normalization() const { return normalization_; }
  double dk() const { return dk_; }
  /// Periodic box length L = 2π/Δk implied by the discrete momenta.
  double box_length() const;

  std::span<const double> momenta() const { return momenta_; }
  std::span<const double> frequencies() const { return frequencies_; }
  std::span<const double> couplings() const { return couplings_; }

  /// Index of the mode with momentum -k_j.
  int partner(int mode) const { return mode_count() - 1 - mode; }

 private:
  FieldGrid() = default;
  double k_max_ = 0.0;
  double speed_ = 0.0;
  double normalization_ = 0.0;
  double dk_ = 0.0;
  std::vector<double> momenta_;
  std::vector<double> frequencies_;
  std::vector<double> couplings_;
};

}  // namespace lightcone::model
