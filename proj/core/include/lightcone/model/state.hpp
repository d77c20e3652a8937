#pragma once

#include <memory>
#include <string_view>

#include <Eigen/Dense>

#include "lightcone/model/fock_basis.hpp"

namespace lightcone::model {

struct StateVector {
  std::shared_ptr<const FockBasis> basis;
  Eigen::VectorXcd amplitudes;

  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes.size()); }
  double norm() const { return amplitudes.norm(); }
};

enum class InitialState { switch_state, eA_gB, gA_eB };

std::string_view to_string(InitialState kind);
/// Accepts "switch", "eA_gB", "gA_eB"; throws ArgumentError otherwise.
InitialState parse_initial_state(std::string_view text);

/// (|e_A g_B, 0⟩ + |g_A e_B, 0⟩)/√2.
StateVector switch_state(std::shared_ptr<const FockBasis> basis);
/// Vacuum-photon basis vector |a b, 0⟩.
StateVector product_state(std::shared_ptr<const FockBasis> basis, Level a, Level b);
StateVector initial_state(std::shared_ptr<const FockBasis> basis, InitialState kind);

}  // namespace lightcone::model
