#include "lightcone/algebra/hamiltonian_symbolic.hpp"

#include <string>
#include <vector>

#include "lightcone/error.hpp"

namespace lightcone::algebra {

namespace {

const ComplexRational kHalf{Rational(1, 2), Rational(0)};
const ComplexRational kI{Rational(0), Rational(1)};
const ComplexRational kMinusI{Rational(0), Rational(-1)};
const ComplexRational kOne{Rational(1), Rational(0)};

OperatorExpr sym(const OperatorSymbol& s) { return OperatorExpr::symbol(s); }
OperatorExpr par(const Param& p, int power = 1) { return OperatorExpr::param(p, power); }

OperatorExpr qubit_part() {
  return kHalf * par(Param::omega()) * (sym(OperatorSymbol::sigma_z(Atom::A)) + sym(OperatorSymbol::sigma_z(Atom::B)));
}

OperatorExpr interaction(const OperatorExpr& field_a, const OperatorExpr& field_b) {
  return par(Param::dipole(Atom::A)) * sym(OperatorSymbol::sigma_x(Atom::A)) * field_a +
         par(Param::dipole(Atom::B)) * sym(OperatorSymbol::sigma_x(Atom::B)) * field_b;
}

// Leibniz rule for the free-field derivation over the field factors of each
// term; Paulis and bosons are untouched.
OperatorExpr free_field_derivation(const OperatorExpr& x) {
  std::vector<RawTerm> raw;
  for (const auto& [key, c] : x.terms()) {
    const auto& fields = key.word.fields;
    for (std::size_t pos = 0; pos < fields.size(); ++pos) {
      Word prefix = key.word;
      prefix.fields.clear();
      RawTerm t{c * kMinusI, key.monomial, prefix.symbols()};
      for (std::size_t k = 0; k < fields.size(); ++k) {
        const int order = fields[k].order + (k == pos ? 1 : 0);
        t.symbols.push_back(OperatorSymbol::field(fields[k].atom, order));
      }
      raw.push_back(std::move(t));
    }
  }
  return canonicalize(raw);
}

}  // namespace

HamiltonianSymbolic HamiltonianSymbolic::discrete_modes(int mode_pairs) {
  if (mode_pairs < 1) throw ArgumentError("discrete-mode Hamiltonian needs at least one mode pair");
  HamiltonianSymbolic h;
  h.model_ = FieldModel::discrete_modes;
  h.mode_pairs_ = mode_pairs;

  OperatorExpr free_field;
  for (int site = 0; site < 2; ++site) {
    const auto atom = static_cast<Atom>(site);
    OperatorExpr e;
    for (int p = 1; p <= mode_pairs; ++p) {
      for (int sign : {-1, 1}) {
        const int mode = sign * p;
        const OperatorExpr amp = par(Param::coupling(p)) * par(Param::phase(atom, p), sign);
        const OperatorExpr amp_conj = par(Param::coupling(p)) * par(Param::phase(atom, p), -sign);
        e = e + kI * amp * sym(OperatorSymbol::annihilate(mode)) + kMinusI * amp_conj * sym(OperatorSymbol::create(mode));
      }
    }
    h.field_[site] = e;
  }
  for (int p = 1; p <= mode_pairs; ++p) {
    for (int mode : {-p, p}) {
      free_field = free_field + par(Param::frequency(p)) * sym(OperatorSymbol::create(mode)) *
                                    sym(OperatorSymbol::annihilate(mode));
    }
  }
  h.explicit_ = qubit_part() + free_field + interaction(h.field_[0], h.field_[1]);
  return h;
}

HamiltonianSymbolic HamiltonianSymbolic::local_field() {
  HamiltonianSymbolic h;
  h.model_ = FieldModel::local_field;
  h.field_[0] = sym(OperatorSymbol::field(Atom::A));
  h.field_[1] = sym(OperatorSymbol::field(Atom::B));
  h.explicit_ = qubit_part() + interaction(h.field_[0], h.field_[1]);
  return h;
}

OperatorExpr HamiltonianSymbolic::commutator_with(const OperatorExpr& x, std::size_t max_terms) const {
  OperatorExpr out = commutator(explicit_, x, max_terms);
  if (model_ == FieldModel::local_field) out = out + free_field_derivation(x);
  if (out.size() > max_terms) {
    throw ResourceLimitError("nested commutator exceeds " + std::to_string(max_terms) + " terms");
  }
  return out;
}

OperatorExpr nested_commutator(const OperatorExpr& seed, const HamiltonianSymbolic& hamiltonian, int depth,
                               const NestingLimits& limits) {
  if (depth < 0) throw ArgumentError("commutator depth must be nonnegative");
  if (depth > limits.max_depth) {
    throw ResourceLimitError("commutator depth " + std::to_string(depth) + " exceeds configured maximum " +
                             std::to_string(limits.max_depth));
  }
  OperatorExpr current = seed;
  for (int n = 0; n < depth; ++n) current = hamiltonian.commutator_with(current, limits.max_terms);
  return current;
}

std::set<Atom> nested_commutator_support(const OperatorExpr& seed, const HamiltonianSymbolic& hamiltonian,
                                         int depth, const NestingLimits& limits) {
  return support(nested_commutator(seed, hamiltonian, depth, limits));
}

}  // namespace lightcone::algebra
