#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lightcone/atom.hpp"

namespace lightcone::model {

enum class Level : std::uint8_t { ground = 0, excited = 1 };

struct BasisLabel {
  Level a = Level::ground;
  Level b = Level::ground;
  // Photon content as a sorted multiset of mode indices: {3, 3, 7} means
  // two photons in mode 3 and one in mode 7.
  std::vector<int> photons;

  int occupation(int mode) const;
  Level level(Atom atom) const { return atom == Atom::A ? a : b; }
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// Truncated joint basis: two qubits times all photon configurations with at
/// most n_max photons in total.
///
/// index = 4·config + 2·level_A + level_B, where configs are grouped by photon
/// number and ranked within a sector by the combinatorial number system of
/// the multiset. Sector n holds C(n+M-1, n) configurations.
class FockBasis {
 public:
  static constexpr std::size_t kDefaultDimensionCap = 16'000'000;

  /// Throws ArgumentError for mode_count < 1 or max_total_photons < 0, and
  /// ResourceLimitError when the dimension would exceed dimension_cap.
  static FockBasis build(int mode_count, int max_total_photons,
                         std::size_t dimension_cap = kDefaultDimensionCap);

  /// 4·Σ_{n≤n_max} C(n+M-1, n), or 0 if that exceeds `cap`.
  static std::size_t predicted_dimension(int mode_count, int max_total_photons, std::size_t cap);

  int mode_count() const { return mode_count_; }
  int max_total_photons() const { return max_photons_; }
  std::size_t dimension() const { return 4 * config_count(); }
  std::size_t config_count() const { return config_offsets_.size() - 1; }

  BasisLabel label(std::size_t index) const;
  /// Throws ArgumentError if the label lies outside the truncated space.
  std::size_t index(const BasisLabel& label) const;

  static std::size_t qubit_index(Level a, Level b) { return 2 * static_cast<std::size_t>(a) + static_cast<std::size_t>(b); }
  static std::size_t compose(std::size_t config, std::size_t qubits) { return 4 * config + qubits; }

  /// Sorted photon multiset of a configuration.
  std::span<const int> config_photons(std::size_t config) const;
  /// Rank of a sorted multiset; the caller guarantees size ≤ n_max and valid modes.
  std::size_t config_index(std::span<const int> sorted_photons) const;

 private:
  FockBasis() = default;
  std::size_t binomial(std::size_t n, std::size_t k) const;

  int mode_count_ = 0;
  int max_photons_ = 0;
  std::vector<std::size_t> sector_offsets_;  // first config index of each photon-number sector
  std::vector<std::size_t> config_offsets_;  // CSR-style offsets into config_data_
  std::vector<int> config_data_;
  std::vector<std::size_t> binomials_;       // (M + n_max + 1) x (n_max + 2) table
};

}  // namespace lightcone::model
