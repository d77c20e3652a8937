#include "lightcone/evolve/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "lightcone/error.hpp"

namespace lightcone::evolve {

namespace {

using cd = std::complex<double>;

// φ1(z) = (e^z - 1)/z
cd phi1(cd z) {
  if (std::abs(z) < 1e-5) return 1.0 + z / 2.0 + z * z / 6.0;
  return (std::exp(z) - 1.0) / z;
}

class Lanczos {
 public:
  Lanczos(const SparseHamiltonian& h, int max_dim)
      : h_(h), max_dim_(max_dim), scale_(std::max(1.0, h.norm_inf())) {}

  // Builds the Krylov basis of `v`; returns the matvec count.
  std::size_t build(const Eigen::VectorXcd& v) {
    const Eigen::Index n = v.size();
    beta0_ = v.norm();
    const int m_cap = static_cast<int>(std::min<Eigen::Index>(max_dim_, n));
    basis_.resize(n, m_cap + 1);
    alpha_.assign(static_cast<std::size_t>(m_cap), 0.0);
    beta_.assign(static_cast<std::size_t>(m_cap), 0.0);
    basis_.col(0) = v / beta0_;
    m_ = m_cap;
    residual_ = 0.0;
    std::size_t matvecs = 0;
    Eigen::VectorXcd w(n);
    for (int j = 0; j < m_cap; ++j) {
      w.noalias() = h_.matrix() * basis_.col(j);
      ++matvecs;
      alpha_[j] = basis_.col(j).dot(w).real();
      // Two passes of classical Gram-Schmidt against the whole basis.
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXcd proj = basis_.leftCols(j + 1).adjoint() * w;
        w.noalias() -= basis_.leftCols(j + 1) * proj;
      }
      const double b = w.norm();
      beta_[j] = b;
      if (b <= 1e-13 * scale_) {
        m_ = j + 1;
        residual_ = 0.0;
        break;
      }
      basis_.col(j + 1) = w / b;
      residual_ = b;
    }

    Eigen::VectorXd diag(m_), sub(std::max(0, m_ - 1));
    for (int j = 0; j < m_; ++j) diag[j] = alpha_[j];
    for (int j = 0; j + 1 < m_; ++j) sub[j] = beta_[j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (eig.info() != Eigen::Success) throw ConvergenceError("tridiagonal eigensolver failed");
    lambda_ = eig.eigenvalues();
    q_ = eig.eigenvectors();
    return matvecs;
  }

  // A-posteriori local error estimate for a step of length tau.
  double error(double tau) const {
    if (residual_ == 0.0) return 0.0;
    cd sum = 0.0;
    for (int k = 0; k < m_; ++k) sum += q_(m_ - 1, k) * phi1(cd(0.0, -tau * lambda_[k])) * q_(0, k);
    return beta0_ * residual_ * tau * std::abs(sum);
  }

  void step(double tau, Eigen::VectorXcd& out) const {
    Eigen::VectorXcd y(m_);
    Eigen::VectorXcd c(m_);
    for (int k = 0; k < m_; ++k) c[k] = std::exp(cd(0.0, -tau * lambda_[k])) * q_(0, k);
    y = q_.cast<cd>() * c;
    out.noalias() = basis_.leftCols(m_) * (beta0_ * y);
  }

  int dimension() const { return m_; }

 private:
  const SparseHamiltonian& h_;
  int max_dim_;
  double scale_;  // invariant-subspace threshold is relative to this
  int m_ = 0;
  double beta0_ = 0.0;
  double residual_ = 0.0;
  Eigen::MatrixXcd basis_;
  std::vector<double> alpha_, beta_;
  Eigen::VectorXd lambda_;
  Eigen::MatrixXd q_;
};

}  // namespace

void PropagatorConfig::validate() const {
  if (!std::isfinite(dt) || dt <= 0.0) throw ArgumentError("dt must be positive");
  if (!(tolerance > 0.0 && tolerance < 1.0)) throw ArgumentError("tolerance must lie in (0, 1)");
  if (krylov_dim < 2) throw ArgumentError("krylov_dim must be at least 2");
}

std::vector<double> time_grid(double t_max, double dt) {
  if (!std::isfinite(t_max) || t_max < 0.0) throw ArgumentError("t_max must be nonnegative");
  if (!std::isfinite(dt) || dt <= 0.0) throw ArgumentError("dt must be positive");
  std::vector<double> out;
  const auto steps = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
  for (std::size_t i = 0; i <= steps; ++i) out.push_back(std::min(t_max, static_cast<double>(i) * dt));
  return out;
}

std::vector<double> uniform_time_grid(double t_max, std::size_t samples) {
  if (!std::isfinite(t_max) || t_max < 0.0) throw ArgumentError("t_max must be nonnegative");
  if (samples < 1) throw ArgumentError("need at least one sample");
  if (samples == 1) return {0.0};
  std::vector<double> out(samples);
  for (std::size_t i = 0; i < samples; ++i) out[i] = t_max * static_cast<double>(i) / static_cast<double>(samples - 1);
  out.back() = t_max;
  return out;
}

EvolveStats evolve_observed(const SparseHamiltonian& h, const StateVector& psi0, std::span<const double> t_grid,
                            const PropagatorConfig& cfg, const Observer& observe) {
  cfg.validate();
  if (psi0.dimension() != h.dimension()) {
    throw ArgumentError("state dimension " + std::to_string(psi0.dimension()) + " does not match Hamiltonian dimension " +
                        std::to_string(h.dimension()));
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-9) throw ArgumentError("initial state is not normalized");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!std::isfinite(t_grid[i]) || t_grid[i] < 0.0) throw ArgumentError("time grid entries must be finite and >= 0");
    if (i > 0 && t_grid[i] < t_grid[i - 1]) throw ArgumentError("time grid must be ascending");
  }

  EvolveStats stats;
  Lanczos lanczos(h, cfg.krylov_dim);
  StateVector psi = psi0;
  Eigen::VectorXcd next(psi.amplitudes.size());
  double t = 0.0;
  double tau = cfg.dt;
  const double m = static_cast<double>(cfg.krylov_dim);

  for (std::size_t idx = 0; idx < t_grid.size(); ++idx) {
    const double target = t_grid[idx];
    while (t < target) {
      stats.matvecs += lanczos.build(psi.amplitudes);
      const double remaining = target - t;
      double trial = std::min(tau, remaining);
      double err = lanczos.error(trial);
      while (err > cfg.tolerance) {
        ++stats.rejected;
        const double factor = std::clamp(0.9 * std::pow(cfg.tolerance / err, 1.0 / m), 0.2, 0.9);
        trial *= factor;
        if (trial <= 1e-14 * std::max(1.0, target)) {
          throw ConvergenceError("Krylov step size underflow at t = " + std::to_string(t));
        }
        err = lanczos.error(trial);
      }
      lanczos.step(trial, next);
      psi.amplitudes.swap(next);
      ++stats.steps;
      const bool clipped = tau >= remaining && trial == remaining;
      t = trial >= remaining ? target : t + trial;
      const double growth = err > 0.0 ? std::clamp(0.9 * std::pow(cfg.tolerance / err, 1.0 / m), 0.2, 2.0) : 2.0;
      // A step shortened only to land on an output time says nothing against the old size.
      tau = clipped ? std::max(tau, trial * growth) : trial * growth;
    }
    observe(idx, target, psi);
  }
  return stats;
}

std::vector<StateVector> evolve(const SparseHamiltonian& h, const StateVector& psi0, std::span<const double> t_grid,
                                const PropagatorConfig& cfg, EvolveStats* stats) {
  std::vector<StateVector> out;
  out.reserve(t_grid.size());
  const auto s = evolve_observed(h, psi0, t_grid, cfg, [&](std::size_t, double, const StateVector& psi) { out.push_back(psi); });
  if (stats) *stats = s;
  return out;
}

}  // namespace lightcone::evolve
