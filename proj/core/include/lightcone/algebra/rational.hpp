#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace lightcone::algebra {

__extension__ using WideInt = __int128;

// Exact rational with 64-bit numerator/denominator. Always reduced, den > 0.
// Overflow raises ResourceLimitError instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  // "p" or "p/q"
  std::string str() const;

 private:
  static Rational from_wide(WideInt num, WideInt den);
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct ComplexRational {
  Rational re;
  Rational im;

  static ComplexRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  ComplexRational conj() const { return {re, -im}; }

  ComplexRational operator-() const { return {-re, -im}; }
  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const ComplexRational&, const ComplexRational&) = default;
};

}  // namespace lightcone::algebra
