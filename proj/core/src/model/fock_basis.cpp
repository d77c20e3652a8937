#include "lightcone/model/fock_basis.hpp"

#include <algorithm>
#include <string>

#include "lightcone/error.hpp"

namespace lightcone::model {

int BasisLabel::occupation(int mode) const {
  return static_cast<int>(std::count(photons.begin(), photons.end(), mode));
}

std::size_t FockBasis::predicted_dimension(int mode_count, int max_total_photons, std::size_t cap) {
  long double total = 0.0L;
  long double sector = 1.0L;  // C(n+M-1, n)
  for (int n = 0; n <= max_total_photons; ++n) {
    if (n > 0) sector = sector * static_cast<long double>(mode_count - 1 + n) / static_cast<long double>(n);
    total += 4.0L * sector;
    if (total > static_cast<long double>(cap)) return 0;
  }
  return static_cast<std::size_t>(total + 0.5L);
}

FockBasis FockBasis::build(int mode_count, int max_total_photons, std::size_t dimension_cap) {
  if (mode_count < 1) throw ArgumentError("mode_count must be positive");
  if (max_total_photons < 0) throw ArgumentError("max_total_photons must be nonnegative");
  if (predicted_dimension(mode_count, max_total_photons, dimension_cap) == 0) {
    throw ResourceLimitError("basis for M=" + std::to_string(mode_count) + ", n_max=" +
                             std::to_string(max_total_photons) + " exceeds the dimension cap of " +
                             std::to_string(dimension_cap));
  }

  FockBasis basis;
  basis.mode_count_ = mode_count;
  basis.max_photons_ = max_total_photons;

  const std::size_t rows = static_cast<std::size_t>(mode_count + max_total_photons + 1);
  const std::size_t cols = static_cast<std::size_t>(max_total_photons + 2);
  basis.binomials_.assign(rows * cols, 0);
  for (std::size_t x = 0; x < rows; ++x) {
    basis.binomials_[x * cols] = 1;
    for (std::size_t k = 1; k < cols && k <= x; ++k) {
      basis.binomials_[x * cols + k] = basis.binomials_[(x - 1) * cols + k - 1] + basis.binomials_[(x - 1) * cols + k];
    }
  }

  basis.sector_offsets_.push_back(0);
  for (int n = 0; n <= max_total_photons; ++n) {
    const std::size_t count = basis.binomial(static_cast<std::size_t>(n + mode_count - 1), static_cast<std::size_t>(n));
    basis.sector_offsets_.push_back(basis.sector_offsets_.back() + count);
  }
  const std::size_t configs = basis.sector_offsets_.back();

  basis.config_offsets_.assign(configs + 1, 0);
  std::size_t data_size = 0;
  for (int n = 0; n <= max_total_photons; ++n) {
    for (std::size_t c = basis.sector_offsets_[n]; c < basis.sector_offsets_[n + 1]; ++c) {
      basis.config_offsets_[c] = data_size;
      data_size += static_cast<std::size_t>(n);
    }
  }
  basis.config_offsets_[configs] = data_size;
  basis.config_data_.assign(data_size, 0);

  // Enumerate every non-decreasing sequence and store it at its rank.
  std::vector<int> photons;
  for (int n = 0; n <= max_total_photons; ++n) {
    photons.assign(static_cast<std::size_t>(n), 0);
    while (true) {
      const std::size_t c = basis.config_index(photons);
      std::copy(photons.begin(), photons.end(), basis.config_data_.begin() + static_cast<std::ptrdiff_t>(basis.config_offsets_[c]));
      // Advance to the next non-decreasing sequence.
      int pos = n - 1;
      while (pos >= 0 && photons[pos] == mode_count - 1) --pos;
      if (pos < 0) break;
      const int v = photons[pos] + 1;
      for (int q = pos; q < n; ++q) photons[q] = v;
    }
  }
  return basis;
}

std::size_t FockBasis::binomial(std::size_t n, std::size_t k) const {
  const std::size_t cols = static_cast<std::size_t>(max_photons_ + 2);
  return binomials_[n * cols + k];
}

std::span<const int> FockBasis::config_photons(std::size_t config) const {
  return {config_data_.data() + config_offsets_[config], config_offsets_[config + 1] - config_offsets_[config]};
}

std::size_t FockBasis::config_index(std::span<const int> sorted_photons) const {
  const std::size_t n = sorted_photons.size();
  std::size_t rank = sector_offsets_[n];
  for (std::size_t i = 0; i < n; ++i) {
    rank += binomial(static_cast<std::size_t>(sorted_photons[i]) + i, i + 1);
  }
  return rank;
}

BasisLabel FockBasis::label(std::size_t index) const {
  if (index >= dimension()) throw ArgumentError("basis index out of range");
  const std::size_t config = index / 4;
  const std::size_t q = index % 4;
  const auto photons = config_photons(config);
  return BasisLabel{static_cast<Level>(q / 2), static_cast<Level>(q % 2), {photons.begin(), photons.end()}};
}

std::size_t FockBasis::index(const BasisLabel& label) const {
  if (static_cast<int>(label.photons.size()) > max_photons_) {
    throw ArgumentError("label has more photons than the truncation allows");
  }
  std::vector<int> sorted = label.photons;
  std::sort(sorted.begin(), sorted.end());
  for (int m : sorted) {
    if (m < 0 || m >= mode_count_) throw ArgumentError("label references mode " + std::to_string(m) + " outside the grid");
  }
  return compose(config_index(sorted), qubit_index(label.a, label.b));
}

}  // namespace lightcone::model
