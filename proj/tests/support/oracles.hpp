#pragma once

// Independent reference computations for the test suites. Nothing here may
// call into the code path it is used to check.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "cltlab/finite_dist.hpp"
#include "cltlab/rational.hpp"

namespace cltlab::testing {

/// Law of X + Y by enumerating all pairs into an ordered map.
inline std::map<Rational, Rational> enumerate_sum(const FiniteDist& a, const FiniteDist& b) {
  std::map<Rational, Rational> out;
  for (const auto& x : a.atoms()) {
    for (const auto& y : b.atoms()) out[x.value + y.value] += x.prob * y.prob;
  }
  return out;
}

inline std::map<Rational, Rational> as_map(const FiniteDist& d) {
  std::map<Rational, Rational> out;
  for (const auto& a : d.atoms()) out[a.value] = a.prob;
  return out;
}

/// n!/(k!(n-k)!) p^k (1-p)^(n-k) from a product loop.
inline Rational binomial_pmf_closed_form(long n, long k, const Rational& p) {
  Rational c(1);
  for (long i = 1; i <= k; ++i) c = c * Rational(n - k + i) / Rational(i);
  Rational out = c;
  for (long i = 0; i < k; ++i) out *= p;
  for (long i = 0; i < n - k; ++i) out *= Rational(1) - p;
  return out;
}

/// Random rational with numerator in [-span, span] and denominator in [1, max_den].
inline Rational random_rational(std::mt19937_64& gen, long span, long max_den) {
  std::uniform_int_distribution<long> num(-span, span);
  std::uniform_int_distribution<long> den(1, max_den);
  return Rational(BigInt(num(gen)), BigInt(den(gen)));
}

/// Random probabilities: positive integer weights normalized exactly.
inline std::vector<Rational> random_probs(std::mt19937_64& gen, std::size_t k, long max_weight = 12) {
  std::uniform_int_distribution<long> w(1, max_weight);
  std::vector<long> raw(k);
  long total = 0;
  for (auto& r : raw) total += (r = w(gen));
  std::vector<Rational> out;
  for (long r : raw) out.emplace_back(BigInt(r), BigInt(total));
  return out;
}

/// Distinct random values with the given numerator span and denominator bound.
inline std::vector<Rational> random_distinct_values(std::mt19937_64& gen, std::size_t k, long span, long max_den) {
  std::vector<Rational> out;
  while (out.size() < k) {
    const Rational v = random_rational(gen, span, max_den);
    bool fresh = true;
    for (const auto& o : out) fresh = fresh && o != v;
    if (fresh) out.push_back(v);
  }
  return out;
}

inline FiniteDist random_dist(std::mt19937_64& gen, std::size_t k, long span = 10, long max_den = 6) {
  const auto values = random_distinct_values(gen, k, span, max_den);
  const auto probs = random_probs(gen, k);
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < k; ++i) atoms.push_back({values[i], probs[i]});
  return FiniteDist::make(std::move(atoms));
}

/// Random law with mean exactly zero: draw any law, then shift by its mean.
inline FiniteDist random_mean_zero_dist(std::mt19937_64& gen, std::size_t k, long span = 10, long max_den = 6) {
  const FiniteDist d = random_dist(gen, k, span, max_den);
  Rational mu;
  for (const auto& a : d.atoms()) mu += a.value * a.prob;
  std::vector<Atom> atoms;
  for (const auto& a : d.atoms()) atoms.push_back({a.value - mu, a.prob});
  return FiniteDist::make(std::move(atoms));
}

}  // namespace cltlab::testing
