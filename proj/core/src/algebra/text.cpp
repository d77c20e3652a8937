#include "lightcone/algebra/text.hpp"

#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <vector>

#include "lightcone/error.hpp"

namespace lightcone::algebra {

namespace {

std::string param_text(const Param& p) {
  switch (p.kind) {
    case ParamKind::omega: return "Omega";
    case ParamKind::dipole: return std::string("d") + atom_name(p.atom);
    case ParamKind::coupling: return "g[" + std::to_string(p.index) + "]";
    case ParamKind::frequency: return "w[" + std::to_string(p.index) + "]";
    case ParamKind::phase: return std::string("ph[") + atom_name(p.atom) + "," + std::to_string(p.index) + "]";
    case ParamKind::mode_sum: return "S[" + std::to_string(p.index) + "]";
  }
  return {};
}

std::string with_power(std::string base, int power) {
  if (power != 1) base += "^" + std::to_string(power);
  return base;
}

std::vector<std::string> word_factors(const Word& w) {
  std::vector<std::string> out;
  static constexpr const char* kPauli[] = {"", "sx", "sy", "sz"};
  for (int site = 0; site < 2; ++site) {
    if (w.pauli[site] == Pauli::I) continue;
    out.push_back(std::string(kPauli[static_cast<int>(w.pauli[site])]) + "[" + atom_name(static_cast<Atom>(site)) + "]");
  }
  for (const auto& b : w.bosons) {
    if (b.create > 0) out.push_back(with_power("ad[" + std::to_string(b.mode) + "]", b.create));
    if (b.annihilate > 0) out.push_back(with_power("a[" + std::to_string(b.mode) + "]", b.annihilate));
  }
  // Runs of equal field factors collapse into a power.
  for (std::size_t k = 0; k < w.fields.size();) {
    std::size_t run = 1;
    while (k + run < w.fields.size() && w.fields[k + run] == w.fields[k]) ++run;
    const auto& f = w.fields[k];
    std::string base = std::string("E[") + atom_name(f.atom);
    if (f.order != 0) base += "," + std::to_string(f.order);
    base += "]";
    out.push_back(with_power(base, static_cast<int>(run)));
    k += run;
  }
  return out;
}

void emit_part(std::ostringstream& os, bool first, const Rational& value, bool imaginary,
               const std::vector<std::string>& factors) {
  const bool negative = value < Rational(0);
  const Rational magnitude = negative ? -value : value;
  if (first) {
    if (negative) os << "-";
  } else {
    os << (negative ? " - " : " + ");
  }
  std::vector<std::string> all;
  if (magnitude != Rational(1)) all.push_back(magnitude.str());
  if (imaginary) all.push_back("i");
  all.insert(all.end(), factors.begin(), factors.end());
  if (all.empty()) all.push_back("1");
  for (std::size_t k = 0; k < all.size(); ++k) os << (k ? "*" : "") << all[k];
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  OperatorExpr parse() {
    std::vector<RawTerm> terms;
    skip_ws();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = get() == '-';
    }
    terms.push_back(term(negative));
    while (true) {
      skip_ws();
      if (at_end()) break;
      const char c = get();
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      terms.push_back(term(c == '-'));
    }
    return canonicalize(terms);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ArgumentError("parse error at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char get() {
    if (at_end()) fail("unexpected end of input");
    return text_[pos_++];
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (get() != c) {
      --pos_;
      fail(std::string("expected '") + c + "'");
    }
  }

  std::int64_t integer() {
    skip_ws();
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    std::int64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      if (v > (INT64_MAX - 9) / 10) fail("integer too large");
      v = v * 10 + (get() - '0');
    }
    return negative ? -v : v;
  }

  Atom site() {
    skip_ws();
    const char c = get();
    if (c == 'A') return Atom::A;
    if (c == 'B') return Atom::B;
    --pos_;
    fail("expected atom label A or B");
  }

  std::string identifier() {
    std::string id;
    while (std::isalpha(static_cast<unsigned char>(peek()))) id += get();
    return id;
  }

  int power() {
    skip_ws();
    if (peek() != '^') return 1;
    ++pos_;
    const auto p = integer();
    if (p < -64 || p > 64) fail("power out of range");
    return static_cast<int>(p);
  }

  RawTerm term(bool negative) {
    RawTerm t;
    t.coefficient = {Rational(negative ? -1 : 1), Rational(0)};
    factor(t);
    while (true) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      factor(t);
    }
    return t;
  }

  void factor(RawTerm& t) {
    skip_ws();
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::int64_t num = integer();
      std::int64_t den = 1;
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        den = integer();
        if (den <= 0) fail("denominator must be positive");
      }
      const int p = power();
      if (p < 0) fail("negative power of a number");
      const ComplexRational value{Rational(num, den), Rational(0)};
      for (int k = 0; k < p; ++k) t.coefficient = t.coefficient * value;
      return;
    }
    const std::string id = identifier();
    if (id.empty()) fail("expected factor");
    if (id == "i") {
      const int p = power();
      if (p < 0) fail("negative power of i");
      for (int k = 0; k < p; ++k) t.coefficient = t.coefficient * ComplexRational::i();
      return;
    }
    if (auto param = parameter(id)) {
      const int p = power();
      if (p < 0 && param->kind != ParamKind::phase) fail("negative power of " + id);
      t.monomial = t.monomial * Monomial{{*param, p}};
      return;
    }
    const OperatorSymbol s = operator_symbol(id);
    const int p = power();
    if (p < 0) fail("negative power of an operator");
    for (int k = 0; k < p; ++k) t.symbols.push_back(s);
  }

  std::optional<Param> parameter(const std::string& id) {
    if (id == "Omega") return Param::omega();
    if (id == "dA") return Param::dipole(Atom::A);
    if (id == "dB") return Param::dipole(Atom::B);
    if (id == "g" || id == "w" || id == "S") {
      expect('[');
      const auto j = integer();
      expect(']');
      if (j < 1 || j > 1'000'000) fail("parameter index must be positive");
      const int idx = static_cast<int>(j);
      if (id == "g") return Param::coupling(idx);
      if (id == "w") return Param::frequency(idx);
      return Param::mode_sum(idx);
    }
    if (id == "ph") {
      expect('[');
      const Atom a = site();
      expect(',');
      const auto j = integer();
      expect(']');
      if (j < 1 || j > 1'000'000) fail("phase index must be positive");
      return Param::phase(a, static_cast<int>(j));
    }
    return std::nullopt;
  }

  OperatorSymbol operator_symbol(const std::string& id) {
    if (id == "sx" || id == "sy" || id == "sz" || id == "sp" || id == "sm") {
      expect('[');
      const Atom a = site();
      expect(']');
      if (id == "sx") return OperatorSymbol::sigma_x(a);
      if (id == "sy") return OperatorSymbol::sigma_y(a);
      if (id == "sz") return OperatorSymbol::sigma_z(a);
      if (id == "sp") return OperatorSymbol::sigma_plus(a);
      return OperatorSymbol::sigma_minus(a);
    }
    if (id == "a" || id == "ad") {
      expect('[');
      const auto j = integer();
      expect(']');
      if (j < -1'000'000 || j > 1'000'000) fail("mode index out of range");
      return id == "a" ? OperatorSymbol::annihilate(static_cast<int>(j)) : OperatorSymbol::create(static_cast<int>(j));
    }
    if (id == "E") {
      expect('[');
      const Atom a = site();
      int order = 0;
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        const auto n = integer();
        if (n < 0 || n > 1000) fail("field derivative order out of range");
        order = static_cast<int>(n);
      }
      expect(']');
      return OperatorSymbol::field(a, order);
    }
    fail("unknown symbol '" + id + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const OperatorExpr& expr) {
  if (expr.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : expr.terms()) {
    std::vector<std::string> factors;
    for (const auto& [param, power] : key.monomial) factors.push_back(with_power(param_text(param), power));
    const auto ops = word_factors(key.word);
    factors.insert(factors.end(), ops.begin(), ops.end());
    if (!c.re.is_zero()) {
      emit_part(os, first, c.re, false, factors);
      first = false;
    }
    if (!c.im.is_zero()) {
      emit_part(os, first, c.im, true, factors);
      first = false;
    }
  }
  return os.str();
}

OperatorExpr parse_expr(std::string_view text) {
  std::string_view trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
  if (trimmed == "0") return {};
  if (trimmed.empty()) throw ArgumentError("parse error: empty expression");
  return Parser(trimmed).parse();
}

}  // namespace lightcone::algebra
