#include "lightcone/model/state.hpp"

#include <cmath>
#include <string>

#include "lightcone/error.hpp"

namespace lightcone::model {

namespace {

StateVector zero_state(std::shared_ptr<const FockBasis> basis) {
  if (!basis) throw ArgumentError("null basis");
  StateVector s;
  s.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->dimension()));
  s.basis = std::move(basis);
  return s;
}

}  // namespace

std::string_view to_string(InitialState kind) {
  switch (kind) {
    case InitialState::switch_state: return "switch";
    case InitialState::eA_gB: return "eA_gB";
    case InitialState::gA_eB: return "gA_eB";
  }
  return "?";
}

InitialState parse_initial_state(std::string_view text) {
  if (text == "switch") return InitialState::switch_state;
  if (text == "eA_gB") return InitialState::eA_gB;
  if (text == "gA_eB") return InitialState::gA_eB;
  throw ArgumentError("unknown initial state '" + std::string(text) + "'");
}

StateVector switch_state(std::shared_ptr<const FockBasis> basis) {
  StateVector s = zero_state(std::move(basis));
  const double amp = 1.0 / std::sqrt(2.0);
  s.amplitudes[static_cast<Eigen::Index>(FockBasis::qubit_index(Level::excited, Level::ground))] = amp;
  s.amplitudes[static_cast<Eigen::Index>(FockBasis::qubit_index(Level::ground, Level::excited))] = amp;
  return s;
}

StateVector product_state(std::shared_ptr<const FockBasis> basis, Level a, Level b) {
  StateVector s = zero_state(std::move(basis));
  s.amplitudes[static_cast<Eigen::Index>(FockBasis::qubit_index(a, b))] = 1.0;
  return s;
}

StateVector initial_state(std::shared_ptr<const FockBasis> basis, InitialState kind) {
  switch (kind) {
    case InitialState::switch_state: return switch_state(std::move(basis));
    case InitialState::eA_gB: return product_state(std::move(basis), Level::excited, Level::ground);
    case InitialState::gA_eB: return product_state(std::move(basis), Level::ground, Level::excited);
  }
  throw ArgumentError("unknown initial state");
}

}  // namespace lightcone::model
