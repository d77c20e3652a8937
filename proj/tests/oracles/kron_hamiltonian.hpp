#pragma once

// Independent dense construction of the two-qubit/field Hamiltonian from
// Kronecker products of single-site operators, restricted to the states
// with at most n_max photons in total. Tiny instances only.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;

struct KronInput {
  double omega_A = 1.0, omega_B = 1.0;
  double d_A = 0.0, d_B = 0.0;
  double x_A = 0.0, x_B = 0.0;
  double speed = 1.0, normalization = 1.0;
  int modes = 2;
  double k_max = 1.0;
  int n_max = 1;
};

struct KronSystem {
  Eigen::MatrixXcd h;                   // restricted Hamiltonian
  std::vector<std::vector<int>> occ;    // per restricted state: {level_A, level_B, n_0, ..., n_{M-1}}
};

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Operator `op` on site `site` of the chain {qubit A, qubit B, mode 0..M-1}.
inline Eigen::MatrixXcd embed(const Eigen::MatrixXcd& op, int site, const std::vector<int>& dims) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int s = 0; s < static_cast<int>(dims.size()); ++s) {
    out = kron(out, s == site ? op : Eigen::MatrixXcd::Identity(dims[s], dims[s]));
  }
  return out;
}

inline KronSystem build_kron(const KronInput& in) {
  const int local = in.n_max + 1;
  std::vector<int> dims{2, 2};
  for (int j = 0; j < in.modes; ++j) dims.push_back(local);

  // Qubit basis (g, e).
  Eigen::MatrixXcd sx(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sz << -1, 0, 0, 1;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(local, local);
  for (int n = 1; n < local; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));

  const double dk = 2.0 * in.k_max / in.modes;
  std::vector<double> k;
  for (int n = in.modes / 2; n >= 1; --n) k.push_back(-n * dk);
  for (int n = 1; n <= in.modes / 2; ++n) k.push_back(n * dk);

  Eigen::MatrixXcd h = 0.5 * in.omega_A * embed(sz, 0, dims) + 0.5 * in.omega_B * embed(sz, 1, dims);
  Eigen::MatrixXcd field_A = Eigen::MatrixXcd::Zero(h.rows(), h.cols());
  Eigen::MatrixXcd field_B = field_A;
  for (int j = 0; j < in.modes; ++j) {
    const double w = in.speed * std::abs(k[j]);
    const double g = std::sqrt(in.normalization * w * dk);
    const Eigen::MatrixXcd aj = embed(a, 2 + j, dims);
    h += w * aj.adjoint() * aj;
    const Eigen::MatrixXcd termA = cd(0, g) * std::exp(cd(0, k[j] * in.x_A)) * aj;
    const Eigen::MatrixXcd termB = cd(0, g) * std::exp(cd(0, k[j] * in.x_B)) * aj;
    field_A += termA + termA.adjoint();
    field_B += termB + termB.adjoint();
  }
  h += in.d_A * embed(sx, 0, dims) * field_A + in.d_B * embed(sx, 1, dims) * field_B;

  // Keep states with total photon number ≤ n_max.
  KronSystem sys;
  std::vector<Eigen::Index> keep;
  const Eigen::Index full = h.rows();
  for (Eigen::Index idx = 0; idx < full; ++idx) {
    std::vector<int> digits(dims.size());
    Eigen::Index rest = idx;
    for (int s = static_cast<int>(dims.size()) - 1; s >= 0; --s) {
      digits[s] = static_cast<int>(rest % dims[s]);
      rest /= dims[s];
    }
    int photons = 0;
    for (std::size_t s = 2; s < digits.size(); ++s) photons += digits[s];
    if (photons <= in.n_max) {
      keep.push_back(idx);
      sys.occ.push_back(digits);
    }
  }
  sys.h.resize(static_cast<Eigen::Index>(keep.size()), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t r = 0; r < keep.size(); ++r)
    for (std::size_t c = 0; c < keep.size(); ++c) sys.h(r, c) = h(keep[r], keep[c]);
  return sys;
}

}  // namespace oracle
