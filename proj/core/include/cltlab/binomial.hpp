#pragma once

#include <vector>

#include "cltlab/rational.hpp"

namespace cltlab {

struct BinomialSpec {
  long n;
  Rational p;

  /// Validates n >= 1 and 0 < p < 1.
  static BinomialSpec make(long n, const Rational& p);
};

/// Exact C(n,k) p^k (1-p)^(n-k). Throws KOutOfRange unless 0 <= k <= n.
Rational binom_pmf(const BinomialSpec& spec, long k);

/// Exact P(Bin(n,p) <= k). Throws KOutOfRange unless 0 <= k <= n.
Rational binom_cdf(const BinomialSpec& spec, long k);

/// All exact CDF values k = 0..n, computed over the common denominator q^n.
std::vector<Rational> binom_cdf_table(const BinomialSpec& spec);

/// n! / (sqrt(2 pi n) (n/e)^n), via the exact big-integer factorial and log space.
double stirling_ratio(long n);

}  // namespace cltlab
