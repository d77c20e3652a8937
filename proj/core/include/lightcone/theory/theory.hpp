#pragma once

#include "lightcone/atom.hpp"
#include "lightcone/model/state.hpp"

namespace lightcone::theory {

struct TheoryParams {
  double d_A = 0.02;
  double d_B = 0.02;
  double normalization = 1.0;  // N
  double omega = 1.0;
  double speed = 1.0;          // c
  double separation = 0.15;    // r; only |r| is used

  static TheoryParams from_positions(double d_A, double d_B, double normalization, double omega, double speed,
                                     double x_A, double x_B);
  /// Throws ArgumentError unless N, Ω, c > 0 and all fields are finite.
  void validate() const;
  double cone_time() const;  // |r|/c
};

struct RetardedField {
  bool active = false;
  double retarded_time = 0.0;
};

/// Whether the source field of `source` is switched on at `eval` at time t.
/// Cross terms need t > r/c (θ(0) = 0); self terms are on for every t > 0.
/// Throws ArgumentError for t < 0.
RetardedField retarded_field_coefficient(Atom source, Atom eval, const TheoryParams& params, double t);

struct LeadingOrder {
  double self = 0.0;   // p_eAA for target A
  double cross = 0.0;  // p_eAB for target A
};

/// Leading-order self and cross contributions to the excitation probability of
/// `target`: self = 2π d_t² N Ω t / c, cross = 2π d_A d_B N Ω (t − r/c) θ(t − r/c) / c.
/// For target B the roles of d_A and d_B swap. Throws ArgumentError for t < 0.
LeadingOrder leading_order_probabilities(const TheoryParams& params, double t, Atom target = Atom::A);

/// ⟨σ_A^y σ_B^y⟩ on the initial state: 1 for the switch state, 0 for product states.
double cross_term_root_state_factor(model::InitialState kind);

/// Time functions for one parameter record and initial state.
class PerturbativePrediction {
 public:
  PerturbativePrediction(TheoryParams params, model::InitialState initial);

  const TheoryParams& params() const { return params_; }
  model::InitialState initial_state() const { return initial_; }

  double p_eAA(double t) const;
  /// Includes the initial-state factor.
  double p_eAB(double t) const;
  double p_eBB(double t) const;
  double p_eBA(double t) const;
  /// P_eA(0) + p_eAA + p_eAB. The homogeneous-field term is not modeled.
  double p_eA_total_leading(double t) const;
  double p_eB_total_leading(double t) const;
  /// d(p_eAB)/dt after the cone, 2π d_A d_B N Ω / c times the state factor.
  double cross_slope() const;

 private:
  TheoryParams params_;
  model::InitialState initial_;
  double factor_;
};

}  // namespace lightcone::theory
