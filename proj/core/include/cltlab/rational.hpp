#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cltlab {

using BigInt = mpz_class;

/// Exact arbitrary-precision fraction, always in canonical form
/// (positive denominator, gcd(|num|, den) = 1).
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const mpq_class& q);

  /// Exact value of a finite double (every double is a dyadic rational).
  static Rational from_double(double v);

  /// Accepts "p/q", an integer, or a plain decimal such as "-0.25".
  static Rational parse(std::string_view text);

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }
  const mpq_class& raw() const noexcept { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  /// Nearest double (correctly rounded, unlike mpq_get_d which truncates).
  double to_double() const;

  /// Canonical text: "n" for integers, otherwise "p/q".
  std::string str() const;

  Rational abs() const;
  Rational reciprocal() const;
  Rational pow(unsigned long e) const;

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_{0};
};

/// Largest-magnitude rational dividing both (gcd of numerators over lcm of denominators).
Rational gcd(const Rational& a, const Rational& b);

/// floor(sqrt(v)) for v >= 0.
BigInt isqrt(const BigInt& v);

/// Rational approximation of sqrt(v), v >= 0, with absolute error below 10^-digits
/// relative to the value's scale. Exact whenever v is the square of a rational.
Rational sqrt_approx(const Rational& v, unsigned digits = 60);

BigInt binomial(unsigned long n, unsigned long k);

}  // namespace cltlab
