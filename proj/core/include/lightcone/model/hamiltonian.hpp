#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <memory>

#include <Eigen/Sparse>

#include "lightcone/atom.hpp"
#include "lightcone/model/field_grid.hpp"
#include "lightcone/model/fock_basis.hpp"

namespace lightcone::model {

struct QubitParams {
  double omega = 1.0;     // energy gap Ω (ħ = 1)
  double dipole = 0.0;    // d_i
  double position = 0.0;  // x_i

  /// Throws ArgumentError unless omega > 0 and every field is finite.
  void validate(const char* which) const;
};

struct QubitPair {
  QubitParams a;
  QubitParams b;
  const QubitParams& operator[](Atom atom) const { return atom == Atom::A ? a : b; }
};

using SparseMatrix = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor, int>;

/// H = Σ_i (Ω_i/2) σ^z_i + Σ_j ω_j a†_j a_j + Σ_i d_i σ^x_i E(x_i),
/// E(x) = Σ_j [ i g_j e^{i k_j x} a_j + h.c. ],
/// projected onto the truncated basis (matrix elements leaving the
/// n ≤ n_max sector are dropped).
///
/// Each off-diagonal pair is generated once from the photon-creating side and
/// mirrored as its complex conjugate, so the stored matrix is exactly
/// Hermitian. Couplings enter only through the products d_i·g_j.
class SparseHamiltonian {
 public:
  SparseHamiltonian(SparseMatrix matrix, QubitPair qubits, FieldGrid grid, std::shared_ptr<const FockBasis> basis);

  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
  const SparseMatrix& matrix() const { return matrix_; }
  const QubitPair& qubits() const { return qubits_; }
  const FieldGrid& grid() const { return grid_; }
  const std::shared_ptr<const FockBasis>& basis() const { return basis_; }

  std::complex<double> entry(std::size_t row, std::size_t col) const;
  /// Largest |H_rc - conj(H_cr)| over stored entries.
  double hermiticity_defect() const;
  /// max_r Σ_c |H_rc|, an upper bound on the spectral radius.
  double norm_inf() const;

  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const { out.noalias() = matrix_ * in; }

 private:
  SparseMatrix matrix_;
  QubitPair qubits_;
  FieldGrid grid_;
  std::shared_ptr<const FockBasis> basis_;
};

/// Throws ArgumentError when grid and basis disagree on the mode count or
/// a qubit parameter is invalid.
SparseHamiltonian assemble_hamiltonian(const QubitPair& qubits, const FieldGrid& grid,
                                       std::shared_ptr<const FockBasis> basis);

/// Sparse triplet export:
///
///   # lightcone sparse hamiltonian v1
///   # dimension <D>
///   # nnz <K>
///   # key value ...            (physical and grid metadata)
///   <row> <col> <re> <im>      one stored entry per line, row-major, 17 significant digits
void write_triplets(std::ostream& out, const SparseHamiltonian& hamiltonian);

struct TripletFile {
  std::size_t dimension = 0;
  SparseMatrix matrix;
};

/// Reads the format written by write_triplets; throws ArgumentError on malformed input.
TripletFile read_triplets(std::istream& in);

}  // namespace lightcone::model
