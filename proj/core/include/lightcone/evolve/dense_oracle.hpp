#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "lightcone/model/hamiltonian.hpp"
#include "lightcone/model/state.hpp"

namespace lightcone::evolve {

/// Full eigendecomposition of a small Hamiltonian, for reference propagation.
class DenseOracle {
 public:
  static constexpr std::size_t kMaxDimension = 4096;

  /// Throws ResourceLimitError above kMaxDimension.
  explicit DenseOracle(const model::SparseHamiltonian& h);

  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXcd& eigenvectors() const { return eigenvectors_; }
  double ground_energy() const { return eigenvalues_[0]; }

  /// e^{-iHt} psi0. Throws ArgumentError for t < 0 or a dimension mismatch.
  model::StateVector propagate(const model::StateVector& psi0, double t) const;

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
};

Eigen::MatrixXcd to_dense(const model::SparseHamiltonian& h);

model::StateVector dense_oracle(const model::SparseHamiltonian& h, const model::StateVector& psi0, double t);

}  // namespace lightcone::evolve
