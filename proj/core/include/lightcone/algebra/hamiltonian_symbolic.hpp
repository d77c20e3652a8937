#pragma once

#include <cstddef>
#include <set>

#include "lightcone/algebra/operator_expr.hpp"

namespace lightcone::algebra {

enum class FieldModel {
  // Finite set of parity-paired modes j = ±1..±P with explicit a_j, a†_j.
  discrete_modes,
  // Continuum field sampled only at the atom positions: E(x_i) and its time
  // derivatives are symbols, the free-field Hamiltonian acts as the
  // derivation [H_f, E^(n)(x_i)] = -i E^(n+1)(x_i).
  local_field,
};

// H = (Omega/2)(sz_A + sz_B) + H_field + sum_i d_i sx_i E(x_i)
//
// In the discrete-mode model E(x_i) = sum_j [ i g_|j| ph[i,|j|]^sgn(j) a_j + h.c. ]
// and H_field = sum_j w_|j| a†_j a_j, so the whole Hamiltonian is an explicit
// OperatorExpr. In the local-field model H_field has no finite expansion and
// enters only through its action on field symbols.
class HamiltonianSymbolic {
 public:
  static HamiltonianSymbolic discrete_modes(int mode_pairs);
  static HamiltonianSymbolic local_field();

  FieldModel model() const { return model_; }
  int mode_pairs() const { return mode_pairs_; }

  // E(x_atom) in this model.
  const OperatorExpr& field_at(Atom atom) const { return field_[static_cast<int>(atom)]; }
  // Part of H with a finite expansion (all of H for discrete modes).
  const OperatorExpr& explicit_part() const { return explicit_; }

  // [H, x]
  OperatorExpr commutator_with(const OperatorExpr& x, std::size_t max_terms = kDefaultMaxTerms) const;

 private:
  HamiltonianSymbolic() = default;
  FieldModel model_ = FieldModel::discrete_modes;
  int mode_pairs_ = 0;
  OperatorExpr field_[2];
  OperatorExpr explicit_;
};

struct NestingLimits {
  int max_depth = 8;
  std::size_t max_terms = kDefaultMaxTerms;
};

// [H, [H, ... [H, seed]]] with `depth` nested commutators (depth 0 returns seed).
// Throws ResourceLimitError when depth > limits.max_depth or any
// intermediate expression exceeds limits.max_terms.
OperatorExpr nested_commutator(const OperatorExpr& seed, const HamiltonianSymbolic& hamiltonian, int depth,
                               const NestingLimits& limits = {});

std::set<Atom> nested_commutator_support(const OperatorExpr& seed, const HamiltonianSymbolic& hamiltonian,
                                         int depth, const NestingLimits& limits = {});

}  // namespace lightcone::algebra
