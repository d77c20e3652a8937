#include "lightcone/algebra/operator_expr.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

#include "lightcone/error.hpp"

namespace lightcone::algebra {

OperatorSymbol OperatorSymbol::field(Atom atom, int derivative_order) {
  if (derivative_order < 0) throw ArgumentError("field derivative order must be nonnegative");
  return {SymbolKind::field, atom, derivative_order};
}

bool OperatorSymbol::is_pauli() const {
  switch (kind_) {
    case SymbolKind::pauli_x:
    case SymbolKind::pauli_y:
    case SymbolKind::pauli_z:
    case SymbolKind::pauli_plus:
    case SymbolKind::pauli_minus:
      return true;
    default:
      return false;
  }
}

bool OperatorSymbol::is_boson() const {
  return kind_ == SymbolKind::boson_annihilate || kind_ == SymbolKind::boson_create;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out = a;
  for (const auto& [param, power] : b) {
    const int p = (out[param] += power);
    if (p == 0) out.erase(param);
  }
  return out;
}

bool Word::is_identity() const {
  return pauli[0] == Pauli::I && pauli[1] == Pauli::I && bosons.empty() && fields.empty();
}

std::vector<OperatorSymbol> Word::symbols() const {
  std::vector<OperatorSymbol> out;
  for (int site = 0; site < 2; ++site) {
    const auto atom = static_cast<Atom>(site);
    switch (pauli[site]) {
      case Pauli::X: out.push_back(OperatorSymbol::sigma_x(atom)); break;
      case Pauli::Y: out.push_back(OperatorSymbol::sigma_y(atom)); break;
      case Pauli::Z: out.push_back(OperatorSymbol::sigma_z(atom)); break;
      case Pauli::I: break;
    }
  }
  for (const auto& b : bosons) {
    for (int n = 0; n < b.create; ++n) out.push_back(OperatorSymbol::create(b.mode));
    for (int n = 0; n < b.annihilate; ++n) out.push_back(OperatorSymbol::annihilate(b.mode));
  }
  for (const auto& f : fields) out.push_back(OperatorSymbol::field(f.atom, f.order));
  return out;
}

namespace {

const ComplexRational kOne{Rational(1), Rational(0)};
const ComplexRational kI{Rational(0), Rational(1)};

struct Piece {
  ComplexRational coefficient;
  Monomial monomial;
  Word word;
};

// sigma_p sigma_q = phase * sigma_r
std::pair<ComplexRational, Pauli> pauli_product(Pauli p, Pauli q) {
  if (p == Pauli::I) return {kOne, q};
  if (q == Pauli::I) return {kOne, p};
  if (p == q) return {kOne, Pauli::I};
  const int a = static_cast<int>(p);
  const int b = static_cast<int>(q);
  const auto r = static_cast<Pauli>(6 - a - b);
  // (X,Y), (Y,Z), (Z,X) are the cyclic orders.
  const bool cyclic = (b - a + 3) % 3 == 1;
  return {cyclic ? kI : -kI, r};
}

Pauli pauli_of(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::pauli_x: return Pauli::X;
    case SymbolKind::pauli_y: return Pauli::Y;
    case SymbolKind::pauli_z: return Pauli::Z;
    default: return Pauli::I;
  }
}

// [E^(n)(x_a), E^(m)(x_b)]. Distinct atoms sit at distinct points, where the
// equal-time commutator of the continuum field and all its time derivatives
// vanishes. At a single point it is 2i Im(i^(m-n)) S[n+m].
std::optional<std::pair<ComplexRational, Param>> field_commutator(FieldFactor lhs, FieldFactor rhs) {
  if (lhs.atom != rhs.atom) return std::nullopt;
  const int d = rhs.order - lhs.order;
  const int r = ((d % 4) + 4) % 4;
  if (r == 0 || r == 2) return std::nullopt;
  const Rational im(r == 1 ? 2 : -2);
  return std::make_pair(ComplexRational{Rational(0), im}, Param::mode_sum(lhs.order + rhs.order));
}

void append_field(Piece piece, FieldFactor f, std::vector<Piece>& out) {
  auto& fields = piece.word.fields;
  if (fields.empty() || !(f < fields.back())) {
    fields.push_back(f);
    out.push_back(std::move(piece));
    return;
  }
  const FieldFactor last = fields.back();
  fields.pop_back();
  // F' last f = (F' f) last + F' [last, f]
  if (auto c = field_commutator(last, f)) {
    Piece extra = piece;
    extra.coefficient = extra.coefficient * c->first;
    extra.monomial = extra.monomial * Monomial{{c->second, 1}};
    out.push_back(std::move(extra));
  }
  std::vector<Piece> moved;
  append_field(std::move(piece), f, moved);
  for (auto& q : moved) {
    q.word.fields.push_back(last);
    out.push_back(std::move(q));
  }
}

void append_boson(Piece piece, const OperatorSymbol& s, std::vector<Piece>& out) {
  auto& bosons = piece.word.bosons;
  auto it = std::lower_bound(bosons.begin(), bosons.end(), s.mode(),
                             [](const BosonPower& b, int mode) { return b.mode < mode; });
  if (it == bosons.end() || it->mode != s.mode()) it = bosons.insert(it, BosonPower{s.mode(), 0, 0});

  if (s.kind() == SymbolKind::boson_annihilate) {
    ++it->annihilate;
    out.push_back(std::move(piece));
    return;
  }
  // a†^m a^n a† = a†^(m+1) a^n + n a†^m a^(n-1)
  const int n = it->annihilate;
  if (n > 0) {
    Piece contracted = piece;
    auto& b = *(contracted.word.bosons.begin() + (it - bosons.begin()));
    --b.annihilate;
    if (b.create == 0 && b.annihilate == 0) contracted.word.bosons.erase(contracted.word.bosons.begin() + (it - bosons.begin()));
    contracted.coefficient = contracted.coefficient * ComplexRational{Rational(n), Rational(0)};
    out.push_back(std::move(contracted));
  }
  ++it->create;
  out.push_back(std::move(piece));
}

void append_symbol(Piece piece, const OperatorSymbol& s, std::vector<Piece>& out) {
  switch (s.kind()) {
    case SymbolKind::identity:
      out.push_back(std::move(piece));
      return;
    case SymbolKind::pauli_plus:
    case SymbolKind::pauli_minus: {
      // sigma_± = (sigma_x ± i sigma_y) / 2
      const ComplexRational half{Rational(1, 2), Rational(0)};
      const ComplexRational ihalf{Rational(0), Rational(s.kind() == SymbolKind::pauli_plus ? 1 : -1, 2)};
      Piece x = piece;
      x.coefficient = x.coefficient * half;
      append_symbol(std::move(x), OperatorSymbol::sigma_x(s.atom()), out);
      piece.coefficient = piece.coefficient * ihalf;
      append_symbol(std::move(piece), OperatorSymbol::sigma_y(s.atom()), out);
      return;
    }
    case SymbolKind::pauli_x:
    case SymbolKind::pauli_y:
    case SymbolKind::pauli_z: {
      auto& slot = piece.word.pauli[static_cast<int>(s.atom())];
      const auto [phase, result] = pauli_product(slot, pauli_of(s.kind()));
      slot = result;
      piece.coefficient = piece.coefficient * phase;
      out.push_back(std::move(piece));
      return;
    }
    case SymbolKind::boson_annihilate:
    case SymbolKind::boson_create:
      append_boson(std::move(piece), s, out);
      return;
    case SymbolKind::field:
      append_field(std::move(piece), FieldFactor{s.atom(), s.order()}, out);
      return;
  }
}

void accumulate(OperatorExpr& expr, std::vector<Piece>& pieces, std::size_t max_terms) {
  for (auto& p : pieces) {
    if (p.coefficient.is_zero()) continue;
    expr.add_term(TermKey{std::move(p.word), std::move(p.monomial)}, p.coefficient);
  }
  if (expr.size() > max_terms) {
    throw ResourceLimitError("operator expression exceeds " + std::to_string(max_terms) + " terms");
  }
}

std::vector<Piece> expand_product(Piece start, const std::vector<OperatorSymbol>& symbols) {
  std::vector<Piece> current{std::move(start)};
  std::vector<Piece> next;
  for (const auto& s : symbols) {
    next.clear();
    for (auto& p : current) append_symbol(std::move(p), s, next);
    std::swap(current, next);
  }
  return current;
}

OperatorSymbol dagger(const OperatorSymbol& s) {
  switch (s.kind()) {
    case SymbolKind::pauli_plus: return OperatorSymbol::sigma_minus(s.atom());
    case SymbolKind::pauli_minus: return OperatorSymbol::sigma_plus(s.atom());
    case SymbolKind::boson_annihilate: return OperatorSymbol::create(s.mode());
    case SymbolKind::boson_create: return OperatorSymbol::annihilate(s.mode());
    default: return s;
  }
}

}  // namespace

void OperatorExpr::add_term(const TermKey& key, const ComplexRational& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, coefficient);
  if (!inserted) {
    it->second = it->second + coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

OperatorExpr OperatorExpr::identity() { return scalar(kOne); }

OperatorExpr OperatorExpr::scalar(const ComplexRational& value) {
  OperatorExpr e;
  e.add_term(TermKey{}, value);
  return e;
}

OperatorExpr OperatorExpr::symbol(const OperatorSymbol& symbol) {
  return canonicalize(std::vector<RawTerm>{RawTerm{kOne, {}, {symbol}}});
}

OperatorExpr OperatorExpr::param(const Param& param, int power) {
  if (power == 0) return identity();
  if (power < 0 && param.kind != ParamKind::phase) {
    throw ArgumentError("only phase parameters may carry negative powers");
  }
  OperatorExpr e;
  e.add_term(TermKey{Word{}, Monomial{{param, power}}}, kOne);
  return e;
}

OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b) {
  OperatorExpr out = a;
  for (const auto& [key, c] : b.terms_) out.add_term(key, c);
  return out;
}

OperatorExpr OperatorExpr::operator-() const {
  OperatorExpr out;
  for (const auto& [key, c] : terms_) out.terms_.emplace(key, -c);
  return out;
}

OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b) { return a + (-b); }

OperatorExpr operator*(const ComplexRational& c, const OperatorExpr& e) {
  OperatorExpr out;
  if (c.is_zero()) return out;
  for (const auto& [key, v] : e.terms_) out.add_term(key, c * v);
  return out;
}

OperatorExpr OperatorExpr::multiply(const OperatorExpr& a, const OperatorExpr& b, std::size_t max_terms) {
  OperatorExpr out;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      auto pieces = expand_product(Piece{ca * cb, ka.monomial * kb.monomial, ka.word}, kb.word.symbols());
      accumulate(out, pieces, max_terms);
    }
  }
  return out;
}

OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
  return OperatorExpr::multiply(a, b, kDefaultMaxTerms);
}

OperatorExpr OperatorExpr::adjoint() const {
  std::vector<RawTerm> raw;
  raw.reserve(terms_.size());
  for (const auto& [key, c] : terms_) {
    RawTerm t;
    t.coefficient = c.conj();
    for (const auto& [param, power] : key.monomial) {
      t.monomial.emplace(param, param.kind == ParamKind::phase ? -power : power);
    }
    auto symbols = key.word.symbols();
    std::reverse(symbols.begin(), symbols.end());
    for (const auto& s : symbols) t.symbols.push_back(dagger(s));
    raw.push_back(std::move(t));
  }
  return canonicalize(raw);
}

OperatorExpr canonicalize(const std::vector<RawTerm>& raw) {
  OperatorExpr out;
  for (const auto& t : raw) {
    if (t.coefficient.is_zero()) continue;
    auto pieces = expand_product(Piece{t.coefficient, t.monomial, Word{}}, t.symbols);
    accumulate(out, pieces, kDefaultMaxTerms);
  }
  return out;
}

OperatorExpr canonicalize(const OperatorExpr& expr) {
  std::vector<RawTerm> raw;
  raw.reserve(expr.size());
  for (const auto& [key, c] : expr.terms()) raw.push_back(RawTerm{c, key.monomial, key.word.symbols()});
  return canonicalize(raw);
}

OperatorExpr commutator(const OperatorExpr& lhs, const OperatorExpr& rhs, std::size_t max_terms) {
  return OperatorExpr::multiply(lhs, rhs, max_terms) - OperatorExpr::multiply(rhs, lhs, max_terms);
}

std::set<Atom> support(const OperatorExpr& expr) {
  std::set<Atom> atoms;
  for (const auto& [key, c] : expr.terms()) {
    for (int site = 0; site < 2; ++site) {
      if (key.word.pauli[site] != Pauli::I) atoms.insert(static_cast<Atom>(site));
    }
    for (const auto& f : key.word.fields) atoms.insert(f.atom);
    for (const auto& [param, power] : key.monomial) {
      if (param.has_atom()) atoms.insert(param.atom);
    }
  }
  return atoms;
}

}  // namespace lightcone::algebra
