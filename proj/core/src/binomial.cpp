#include "cltlab/binomial.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cltlab/error.hpp"

namespace cltlab {

namespace {

void check_k(const BinomialSpec& spec, long k) {
  if (k < 0 || k > spec.n) {
    throw Error(ErrorKind::KOutOfRange,
                "k=" + std::to_string(k) + " outside 0.." + std::to_string(spec.n));
  }
}

// Integer numerators N_k = C(n,k) a^k (q-a)^(n-k) with p = a/q, so pmf(k) = N_k / q^n.
std::vector<BigInt> pmf_numerators(const BinomialSpec& spec) {
  const BigInt a = spec.p.numerator();
  const BigInt q = spec.p.denominator();
  const BigInt r = q - a;
  std::vector<BigInt> out(static_cast<std::size_t>(spec.n) + 1);
  mpz_pow_ui(out[0].get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(spec.n));
  for (long k = 1; k <= spec.n; ++k) {
    BigInt v = out[static_cast<std::size_t>(k - 1)] * (spec.n - k + 1) * a;
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), BigInt(r * k).get_mpz_t());
    out[static_cast<std::size_t>(k)] = std::move(v);
  }
  return out;
}

BigInt denominator_power(const BinomialSpec& spec) {
  BigInt qn;
  mpz_pow_ui(qn.get_mpz_t(), spec.p.denominator().get_mpz_t(), static_cast<unsigned long>(spec.n));
  return qn;
}

}  // namespace

BinomialSpec BinomialSpec::make(long n, const Rational& p) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "binomial n must be >= 1, got " + std::to_string(n));
  if (p.sign() <= 0 || p >= Rational(1)) {
    throw Error(ErrorKind::InvalidArgument, "binomial p must lie in (0,1), got " + p.str());
  }
  return BinomialSpec{n, p};
}

Rational binom_pmf(const BinomialSpec& spec, long k) {
  check_k(spec, k);
  const auto kk = static_cast<unsigned long>(k);
  const auto nn = static_cast<unsigned long>(spec.n);
  return Rational(binomial(nn, kk), BigInt(1)) * spec.p.pow(kk) * (Rational(1) - spec.p).pow(nn - kk);
}

Rational binom_cdf(const BinomialSpec& spec, long k) {
  check_k(spec, k);
  const std::vector<BigInt> num = pmf_numerators(spec);
  BigInt acc = 0;
  for (long j = 0; j <= k; ++j) acc += num[static_cast<std::size_t>(j)];
  return Rational(acc, denominator_power(spec));
}

std::vector<Rational> binom_cdf_table(const BinomialSpec& spec) {
  const std::vector<BigInt> num = pmf_numerators(spec);
  const BigInt qn = denominator_power(spec);
  std::vector<Rational> out;
  out.reserve(num.size());
  BigInt acc = 0;
  for (const auto& v : num) {
    acc += v;
    out.emplace_back(acc, qn);
  }
  return out;
}

double stirling_ratio(long n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "stirling_ratio needs n >= 1");
  BigInt fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, fact.get_mpz_t());
  const double log_fact = std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
  const auto nn = static_cast<double>(n);
  const double log_approx = 0.5 * std::log(2.0 * std::numbers::pi * nn) + nn * std::log(nn) - nn;
  return std::exp(log_fact - log_approx);
}

}  // namespace cltlab
