#include "lightcone/theory/theory.hpp"

#include <cmath>
#include <numbers>

#include "lightcone/error.hpp"

namespace lightcone::theory {

namespace {

void require_time(double t) {
  if (!std::isfinite(t) || t < 0.0) throw ArgumentError("time must be finite and nonnegative");
}

double initial_excitation(model::InitialState kind, Atom atom) {
  switch (kind) {
    case model::InitialState::switch_state: return 0.5;
    case model::InitialState::eA_gB: return atom == Atom::A ? 1.0 : 0.0;
    case model::InitialState::gA_eB: return atom == Atom::A ? 0.0 : 1.0;
  }
  return 0.0;
}

}  // namespace

TheoryParams TheoryParams::from_positions(double d_A, double d_B, double normalization, double omega, double speed,
                                          double x_A, double x_B) {
  TheoryParams p{d_A, d_B, normalization, omega, speed, std::abs(x_B - x_A)};
  p.validate();
  return p;
}

void TheoryParams::validate() const {
  if (!std::isfinite(d_A) || !std::isfinite(d_B) || !std::isfinite(separation)) {
    throw ArgumentError("theory parameters must be finite");
  }
  if (!(normalization > 0.0) || !std::isfinite(normalization)) throw ArgumentError("N must be positive");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ArgumentError("omega must be positive");
  if (!(speed > 0.0) || !std::isfinite(speed)) throw ArgumentError("c must be positive");
}

double TheoryParams::cone_time() const { return std::abs(separation) / speed; }

RetardedField retarded_field_coefficient(Atom source, Atom eval, const TheoryParams& params, double t) {
  require_time(t);
  params.validate();
  const double delay = source == eval ? 0.0 : params.cone_time();
  if (t > delay) return {true, t - delay};
  return {false, 0.0};
}

LeadingOrder leading_order_probabilities(const TheoryParams& params, double t, Atom target) {
  require_time(t);
  params.validate();
  const double d_self = target == Atom::A ? params.d_A : params.d_B;
  const double rate = 2.0 * std::numbers::pi * params.normalization * params.omega / params.speed;
  LeadingOrder out;
  out.self = rate * d_self * d_self * t;
  const double lag = t - params.cone_time();
  out.cross = lag > 0.0 ? rate * params.d_A * params.d_B * lag : 0.0;
  return out;
}

double cross_term_root_state_factor(model::InitialState kind) {
  return kind == model::InitialState::switch_state ? 1.0 : 0.0;
}

PerturbativePrediction::PerturbativePrediction(TheoryParams params, model::InitialState initial)
    : params_(params), initial_(initial), factor_(cross_term_root_state_factor(initial)) {
  params_.validate();
}

double PerturbativePrediction::p_eAA(double t) const { return leading_order_probabilities(params_, t, Atom::A).self; }
double PerturbativePrediction::p_eAB(double t) const {
  return factor_ * leading_order_probabilities(params_, t, Atom::A).cross;
}
double PerturbativePrediction::p_eBB(double t) const { return leading_order_probabilities(params_, t, Atom::B).self; }
double PerturbativePrediction::p_eBA(double t) const {
  return factor_ * leading_order_probabilities(params_, t, Atom::B).cross;
}

double PerturbativePrediction::p_eA_total_leading(double t) const {
  return initial_excitation(initial_, Atom::A) + p_eAA(t) + p_eAB(t);
}
double PerturbativePrediction::p_eB_total_leading(double t) const {
  return initial_excitation(initial_, Atom::B) + p_eBB(t) + p_eBA(t);
}

double PerturbativePrediction::cross_slope() const {
  return factor_ * 2.0 * std::numbers::pi * params_.d_A * params_.d_B * params_.normalization * params_.omega /
         params_.speed;
}

}  // namespace lightcone::theory
