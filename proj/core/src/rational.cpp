#include "cltlab/rational.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "cltlab/error.hpp"

namespace cltlab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::SumNotOne: return "SumNotOne";
    case ErrorKind::NonPositiveProb: return "NonPositiveProb";
    case ErrorKind::DuplicateValue: return "DuplicateValue";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::ExactBudgetExceeded: return "ExactBudgetExceeded";
    case ErrorKind::LatticeBudgetExceeded: return "LatticeBudgetExceeded";
    case ErrorKind::NonZeroMean: return "NonZeroMean";
    case ErrorKind::KOutOfRange: return "KOutOfRange";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::EtaTooSmallForBudget: return "EtaTooSmallForBudget";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

BigInt parse_int(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw Error(ErrorKind::Parse, "malformed rational literal '" + std::string(whole) + "'");
  }
  BigInt v(std::string(s), 10);
  return neg ? BigInt(-v) : v;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) : q_(num, den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  q_.canonicalize();
}

Rational::Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite double");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), v);
  return Rational(q);
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorKind::Parse, "empty rational literal");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_int(text.substr(0, slash), text);
    const std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) {
      throw Error(ErrorKind::Parse, "malformed denominator in '" + std::string(text) + "'");
    }
    const BigInt den(std::string(den_text), 10);
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = text.substr(dot + 1);
    if (!frac.empty() && !all_digits(frac)) {
      throw Error(ErrorKind::Parse, "malformed decimal '" + std::string(text) + "'");
    }
    std::string digits(text.substr(0, dot));
    if (digits.empty() || digits == "-" || digits == "+") digits += '0';
    digits += frac;
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    return Rational(parse_int(digits, text), scale);
  }

  return Rational(parse_int(text, text), BigInt(1));
}

double Rational::to_double() const {
  // mpq_get_d truncates toward zero; step one ulp outward when that is closer.
  const double t = mpq_get_d(q_.get_mpq_t());
  if (sgn(q_) == 0 || !std::isfinite(t)) return t;
  const double away = std::nextafter(t, sgn(q_) > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(away)) return t;
  const mpq_class lo_err = ::abs(mpq_class(q_ - from_double(t).q_));
  const mpq_class hi_err = ::abs(mpq_class(from_double(away).q_ - q_));
  if (hi_err < lo_err) return away;
  if (hi_err == lo_err) {
    // Ties to even mantissa.
    return (std::bit_cast<std::uint64_t>(t) & 1U) == 0 ? t : away;
  }
  return t;
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

Rational Rational::reciprocal() const {
  if (is_zero()) throw Error(ErrorKind::InvalidArgument, "reciprocal of zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), q_.get_mpq_t());
  return Rational(r);
}

Rational Rational::pow(unsigned long e) const {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), q_.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), q_.get_den_mpz_t(), e);
  return Rational(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
  q_ /= o.q_;
  return *this;
}

Rational gcd(const Rational& a, const Rational& b) {
  BigInt num, den;
  mpz_gcd(num.get_mpz_t(), a.raw().get_num_mpz_t(), b.raw().get_num_mpz_t());
  mpz_lcm(den.get_mpz_t(), a.raw().get_den_mpz_t(), b.raw().get_den_mpz_t());
  if (den == 0) den = 1;
  return Rational(num, den);
}

BigInt isqrt(const BigInt& v) {
  if (v < 0) throw Error(ErrorKind::InvalidArgument, "isqrt of negative value");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

Rational sqrt_approx(const Rational& v, unsigned digits) {
  if (v.sign() < 0) throw Error(ErrorKind::InvalidArgument, "sqrt of negative value");
  // sqrt(p/q) = sqrt(p*q)/q, evaluated at scale 10^digits.
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  const BigInt pq = v.numerator() * v.denominator();
  const BigInt root = isqrt(pq * scale * scale);
  return Rational(root, v.denominator() * scale);
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace cltlab
