#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "lightcone/algebra/rational.hpp"
#include "lightcone/atom.hpp"

namespace lightcone::algebra {

enum class SymbolKind : std::uint8_t {
  pauli_x,
  pauli_y,
  pauli_z,
  pauli_plus,
  pauli_minus,
  boson_annihilate,
  boson_create,
  // E^{(n)}(x_i): n-th time derivative of the free field at atom i's position.
  // Only used by the local-field Hamiltonian model.
  field,
  identity,
};

// One factor of an operator product. Pauli and field kinds carry an atom
// label; boson kinds carry a mode index. Construct through the factories so
// the label/index pairing is always consistent.
class OperatorSymbol {
 public:
  static OperatorSymbol sigma_x(Atom atom) { return {SymbolKind::pauli_x, atom, 0}; }
  static OperatorSymbol sigma_y(Atom atom) { return {SymbolKind::pauli_y, atom, 0}; }
  static OperatorSymbol sigma_z(Atom atom) { return {SymbolKind::pauli_z, atom, 0}; }
  static OperatorSymbol sigma_plus(Atom atom) { return {SymbolKind::pauli_plus, atom, 0}; }
  static OperatorSymbol sigma_minus(Atom atom) { return {SymbolKind::pauli_minus, atom, 0}; }
  static OperatorSymbol annihilate(int mode) { return {SymbolKind::boson_annihilate, Atom::A, mode}; }
  static OperatorSymbol create(int mode) { return {SymbolKind::boson_create, Atom::A, mode}; }
  // Throws ArgumentError for a negative derivative order.
  static OperatorSymbol field(Atom atom, int derivative_order = 0);
  static OperatorSymbol identity() { return {SymbolKind::identity, Atom::A, 0}; }

  SymbolKind kind() const { return kind_; }
  bool is_pauli() const;
  bool is_boson() const;
  bool has_atom() const { return is_pauli() || kind_ == SymbolKind::field; }
  // Atom label; only meaningful when has_atom().
  Atom atom() const { return atom_; }
  // Mode index; only meaningful when is_boson().
  int mode() const { return index_; }
  // Field derivative order; only meaningful for field symbols.
  int order() const { return index_; }

  friend bool operator==(const OperatorSymbol&, const OperatorSymbol&) = default;

 private:
  OperatorSymbol(SymbolKind kind, Atom atom, int index) : kind_(kind), atom_(atom), index_(index) {}
  SymbolKind kind_;
  Atom atom_;
  int index_;
};

// Opaque commuting scalar parameters.
//   omega          Omega
//   dipole         d_A, d_B
//   coupling       g[j]   (shared by the +k_j / -k_j pair)
//   frequency      w[j]   (shared by the pair)
//   phase          ph[i,j] = exp(i k_j x_i); the -k_j partner is ph^-1
//   mode_sum       S[q] = sum over all modes of g_j^2 w_j^q
enum class ParamKind : std::uint8_t { omega, dipole, coupling, frequency, phase, mode_sum };

struct Param {
  ParamKind kind = ParamKind::omega;
  Atom atom = Atom::A;  // dipole, phase
  int index = 0;        // coupling, frequency, phase, mode_sum

  static Param omega() { return {ParamKind::omega, Atom::A, 0}; }
  static Param dipole(Atom a) { return {ParamKind::dipole, a, 0}; }
  static Param coupling(int j) { return {ParamKind::coupling, Atom::A, j}; }
  static Param frequency(int j) { return {ParamKind::frequency, Atom::A, j}; }
  static Param phase(Atom a, int j) { return {ParamKind::phase, a, j}; }
  static Param mode_sum(int q) { return {ParamKind::mode_sum, Atom::A, q}; }

  bool has_atom() const { return kind == ParamKind::dipole || kind == ParamKind::phase; }

  friend bool operator==(const Param&, const Param&) = default;
  friend auto operator<=>(const Param&, const Param&) = default;
};

// Product of parameters; exponents are never zero. Only phases may carry
// negative exponents.
using Monomial = std::map<Param, int>;

Monomial operator*(const Monomial& a, const Monomial& b);

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

// a†^create a^annihilate for one mode (normal ordered).
struct BosonPower {
  int mode = 0;
  int create = 0;
  int annihilate = 0;
  friend bool operator==(const BosonPower&, const BosonPower&) = default;
  friend auto operator<=>(const BosonPower&, const BosonPower&) = default;
};

struct FieldFactor {
  Atom atom = Atom::A;
  int order = 0;
  friend bool operator==(const FieldFactor&, const FieldFactor&) = default;
  friend auto operator<=>(const FieldFactor&, const FieldFactor&) = default;
};

// Canonical operator word: one reduced Pauli per atom (A then B), then bosons
// by ascending mode with creation before annihilation, then field factors in
// non-decreasing (atom, order).
struct Word {
  std::array<Pauli, 2> pauli{Pauli::I, Pauli::I};
  std::vector<BosonPower> bosons;
  std::vector<FieldFactor> fields;

  bool is_identity() const;
  // Factor sequence that reproduces this word when multiplied left to right.
  std::vector<OperatorSymbol> symbols() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

struct TermKey {
  Word word;
  Monomial monomial;
  friend bool operator==(const TermKey&, const TermKey&) = default;
  friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

inline constexpr std::size_t kDefaultMaxTerms = 1'000'000;

// Finite sum of canonical words times parameter monomials with exact complex
// rational coefficients. Zero coefficients are never stored. Values are
// immutable once built; every operation returns a new expression.
class OperatorExpr {
 public:
  using TermMap = std::map<TermKey, ComplexRational>;

  OperatorExpr() = default;

  static OperatorExpr identity();
  static OperatorExpr scalar(const ComplexRational& value);
  static OperatorExpr symbol(const OperatorSymbol& symbol);
  static OperatorExpr param(const Param& param, int power = 1);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  OperatorExpr adjoint() const;

  friend OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b);
  friend OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b);
  friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b);
  friend OperatorExpr operator*(const ComplexRational& c, const OperatorExpr& e);
  OperatorExpr operator-() const;

  friend bool operator==(const OperatorExpr&, const OperatorExpr&) = default;

  // Product with an explicit term-count cap (ResourceLimitError when exceeded).
  static OperatorExpr multiply(const OperatorExpr& a, const OperatorExpr& b, std::size_t max_terms);

  void add_term(const TermKey& key, const ComplexRational& coefficient);

 private:
  TermMap terms_;
};

// Uncanonicalized product: coefficient * monomial * s1 s2 ... sn in the order
// written.
struct RawTerm {
  ComplexRational coefficient{Rational(1), Rational(0)};
  Monomial monomial;
  std::vector<OperatorSymbol> symbols;
};

OperatorExpr canonicalize(const std::vector<RawTerm>& raw);
// Rebuilds every term from its factor sequence; idempotent.
OperatorExpr canonicalize(const OperatorExpr& expr);

OperatorExpr commutator(const OperatorExpr& lhs, const OperatorExpr& rhs,
                        std::size_t max_terms = kDefaultMaxTerms);

// Atom labels appearing in any operator symbol or parameter of the expression.
std::set<Atom> support(const OperatorExpr& expr);

}  // namespace lightcone::algebra
