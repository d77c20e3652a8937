#include "lightcone/model/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lightcone/error.hpp"

namespace lightcone::model {

void QubitParams::validate(const char* which) const {
  if (!std::isfinite(omega) || omega <= 0.0) throw ArgumentError(std::string(which) + ": omega must be positive");
  if (!std::isfinite(dipole)) throw ArgumentError(std::string(which) + ": dipole must be finite");
  if (!std::isfinite(position)) throw ArgumentError(std::string(which) + ": position must be finite");
}

SparseHamiltonian::SparseHamiltonian(SparseMatrix matrix, QubitPair qubits, FieldGrid grid,
                                     std::shared_ptr<const FockBasis> basis)
    : matrix_(std::move(matrix)), qubits_(qubits), grid_(std::move(grid)), basis_(std::move(basis)) {
  matrix_.makeCompressed();
}

std::complex<double> SparseHamiltonian::entry(std::size_t row, std::size_t col) const {
  return matrix_.coeff(static_cast<int>(row), static_cast<int>(col));
}

double SparseHamiltonian::hermiticity_defect() const {
  double worst = 0.0;
  for (int r = 0; r < matrix_.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(matrix_, r); it; ++it) {
      const auto mirror = matrix_.coeff(static_cast<int>(it.col()), r);
      worst = std::max(worst, std::abs(it.value() - std::conj(mirror)));
    }
  }
  return worst;
}

double SparseHamiltonian::norm_inf() const {
  double worst = 0.0;
  for (int r = 0; r < matrix_.outerSize(); ++r) {
    double row = 0.0;
    for (SparseMatrix::InnerIterator it(matrix_, r); it; ++it) row += std::abs(it.value());
    worst = std::max(worst, row);
  }
  return worst;
}

SparseHamiltonian assemble_hamiltonian(const QubitPair& qubits, const FieldGrid& grid,
                                       std::shared_ptr<const FockBasis> basis) {
  if (!basis) throw ArgumentError("null basis");
  if (grid.mode_count() != basis->mode_count()) {
    throw ArgumentError("grid has " + std::to_string(grid.mode_count()) + " modes but basis has " +
                        std::to_string(basis->mode_count()));
  }
  qubits.a.validate("qubit A");
  qubits.b.validate("qubit B");

  const std::size_t dim = basis->dimension();
  if (dim > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
    throw ResourceLimitError("dimension exceeds the sparse index range");
  }
  const int modes = grid.mode_count();
  const int n_max = basis->max_total_photons();
  const auto omega_k = grid.frequencies();
  const auto g = grid.couplings();
  const auto k = grid.momenta();

  // Per-atom, per-mode creation amplitude -i·(d_i g_j)·e^{-i k_j x_i}.
  std::vector<std::complex<double>> create_amp[2];
  for (int site = 0; site < 2; ++site) {
    const auto& q = qubits[static_cast<Atom>(site)];
    create_amp[site].resize(static_cast<std::size_t>(modes));
    for (int j = 0; j < modes; ++j) {
      const double coupling = q.dipole * g[j];
      const double theta = -k[j] * q.position;
      create_amp[site][j] = std::complex<double>(coupling * std::sin(theta), -coupling * std::cos(theta));
    }
  }

  std::vector<Eigen::Triplet<std::complex<double>, int>> triplets;
  std::vector<int> raised;
  for (std::size_t config = 0; config < basis->config_count(); ++config) {
    const auto photons = basis->config_photons(config);
    double field_energy = 0.0;
    for (int m : photons) field_energy += omega_k[m];

    for (std::size_t q = 0; q < 4; ++q) {
      const double sz_a = (q / 2 == 1) ? 1.0 : -1.0;
      const double sz_b = (q % 2 == 1) ? 1.0 : -1.0;
      const double diag = 0.5 * qubits.a.omega * sz_a + 0.5 * qubits.b.omega * sz_b + field_energy;
      const int idx = static_cast<int>(FockBasis::compose(config, q));
      triplets.emplace_back(idx, idx, diag);
    }

    if (static_cast<int>(photons.size()) >= n_max) continue;
    for (int j = 0; j < modes; ++j) {
      raised.assign(photons.begin(), photons.end());
      raised.insert(std::upper_bound(raised.begin(), raised.end(), j), j);
      const std::size_t target = basis->config_index(raised);
      const int occupation_after = static_cast<int>(std::count(raised.begin(), raised.end(), j));
      const double bosonic = std::sqrt(static_cast<double>(occupation_after));
      for (int site = 0; site < 2; ++site) {
        if (create_amp[site][j] == std::complex<double>(0.0, 0.0)) continue;
        const std::complex<double> value = create_amp[site][j] * bosonic;
        for (std::size_t q = 0; q < 4; ++q) {
          const std::size_t flipped = site == 0 ? (q ^ 2u) : (q ^ 1u);
          const int col = static_cast<int>(FockBasis::compose(config, q));
          const int row = static_cast<int>(FockBasis::compose(target, flipped));
          triplets.emplace_back(row, col, value);
          triplets.emplace_back(col, row, std::conj(value));
        }
      }
    }
  }

  SparseMatrix matrix(static_cast<int>(dim), static_cast<int>(dim));
  matrix.setFromTriplets(triplets.begin(), triplets.end());
  return SparseHamiltonian(std::move(matrix), qubits, grid, std::move(basis));
}

void write_triplets(std::ostream& out, const SparseHamiltonian& h) {
  const auto& m = h.matrix();
  std::ostringstream os;
  os.precision(17);
  os << "# lightcone sparse hamiltonian v1\n";
  os << "# dimension " << h.dimension() << "\n";
  os << "# nnz " << m.nonZeros() << "\n";
  os << "# omega_A " << h.qubits().a.omega << " d_A " << h.qubits().a.dipole << " x_A " << h.qubits().a.position << "\n";
  os << "# omega_B " << h.qubits().b.omega << " d_B " << h.qubits().b.dipole << " x_B " << h.qubits().b.position << "\n";
  os << "# M " << h.grid().mode_count() << " k_max " << h.grid().k_max() << " c " << h.grid().speed() << " N "
     << h.grid().normalization() << " n_max " << h.basis()->max_total_photons() << "\n";
  for (int r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      os << r << ' ' << it.col() << ' ' << it.value().real() << ' ' << it.value().imag() << '\n';
    }
  }
  out << os.str();
}

TripletFile read_triplets(std::istream& in) {
  TripletFile file;
  bool have_dimension = false;
  std::vector<Eigen::Triplet<std::complex<double>, int>> triplets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, key;
      ls >> hash >> key;
      if (key == "dimension") {
        ls >> file.dimension;
        have_dimension = static_cast<bool>(ls);
      }
      continue;
    }
    long long r = 0, c = 0;
    double re = 0.0, im = 0.0;
    if (!(ls >> r >> c >> re >> im) || !have_dimension || r < 0 || c < 0 ||
        static_cast<std::size_t>(r) >= file.dimension || static_cast<std::size_t>(c) >= file.dimension) {
      throw ArgumentError("malformed triplet at line " + std::to_string(line_no));
    }
    triplets.emplace_back(static_cast<int>(r), static_cast<int>(c), std::complex<double>(re, im));
  }
  if (!have_dimension) throw ArgumentError("triplet file has no dimension header");
  file.matrix.resize(static_cast<int>(file.dimension), static_cast<int>(file.dimension));
  file.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return file;
}

}  // namespace lightcone::model
