#include "lightcone/evolve/dense_oracle.hpp"

#include <cmath>
#include <string>

#include "lightcone/error.hpp"

namespace lightcone::evolve {

Eigen::MatrixXcd to_dense(const model::SparseHamiltonian& h) {
  if (h.dimension() > DenseOracle::kMaxDimension) {
    throw ResourceLimitError("dense oracle limited to dimension " + std::to_string(DenseOracle::kMaxDimension) +
                             " (got " + std::to_string(h.dimension()) + ")");
  }
  return Eigen::MatrixXcd(h.matrix());
}

DenseOracle::DenseOracle(const model::SparseHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_dense(h));
  if (solver.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed");
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

model::StateVector DenseOracle::propagate(const model::StateVector& psi0, double t) const {
  if (!(t >= 0.0)) throw ArgumentError("oracle time must be nonnegative");
  if (psi0.amplitudes.size() != eigenvalues_.size()) throw ArgumentError("state dimension does not match the Hamiltonian");
  if (t == 0.0) return psi0;
  Eigen::VectorXcd coeffs = eigenvectors_.adjoint() * psi0.amplitudes;
  for (Eigen::Index n = 0; n < coeffs.size(); ++n) {
    coeffs[n] *= std::complex<double>(std::cos(eigenvalues_[n] * t), -std::sin(eigenvalues_[n] * t));
  }
  return model::StateVector{psi0.basis, eigenvectors_ * coeffs};
}

model::StateVector dense_oracle(const model::SparseHamiltonian& h, const model::StateVector& psi0, double t) {
  if (!(t >= 0.0)) throw ArgumentError("oracle time must be nonnegative");
  if (h.dimension() > DenseOracle::kMaxDimension) {
    throw ResourceLimitError("dense oracle limited to dimension " + std::to_string(DenseOracle::kMaxDimension));
  }
  if (t == 0.0) return psi0;
  return DenseOracle(h).propagate(psi0, t);
}

}  // namespace lightcone::evolve
