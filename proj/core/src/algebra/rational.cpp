#include "lightcone/algebra/rational.hpp"

#include <limits>

#include "lightcone/error.hpp"

namespace lightcone::algebra {

namespace {

WideInt gcd_wide(WideInt a, WideInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    WideInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ArgumentError("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(WideInt num, WideInt den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    den = 1;
  } else {
    const WideInt g = gcd_wide(num, den);
    num /= g;
    den /= g;
  }
  constexpr auto lo = static_cast<WideInt>(std::numeric_limits<std::int64_t>::min() + 1);
  constexpr auto hi = static_cast<WideInt>(std::numeric_limits<std::int64_t>::max());
  if (num < lo || num > hi || den > hi) {
    throw ResourceLimitError("rational coefficient overflow");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::operator-() const { return from_wide(-static_cast<WideInt>(num_), den_); }

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<WideInt>(a.num_) * b.den_ + static_cast<WideInt>(b.num_) * a.den_,
                             static_cast<WideInt>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<WideInt>(a.num_) * b.num_, static_cast<WideInt>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw ArgumentError("rational division by zero");
  return Rational::from_wide(static_cast<WideInt>(a.num_) * b.den_, static_cast<WideInt>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const WideInt lhs = static_cast<WideInt>(a.num_) * b.den_;
  const WideInt rhs = static_cast<WideInt>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace lightcone::algebra
