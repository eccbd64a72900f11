#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cltlab/rational.hpp"

namespace cltlab {

struct Atom {
  Rational value;
  Rational prob;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite-support probability distribution with exact rational atoms.
///
/// Atoms are kept strictly increasing by value; every probability is positive
/// and the probabilities sum to exactly one. Instances are immutable.
class FiniteDist {
 public:
  /// Point mass at zero.
  FiniteDist() : atoms_{{Rational(0), Rational(1)}} {}

  /// Validating constructor. Errors name the offending atom:
  /// NonPositiveProb, DuplicateValue, then SumNotOne.
  static FiniteDist make(std::vector<Atom> atoms);

  /// Sums probabilities of equal values and drops zero-mass atoms. The caller
  /// guarantees nonnegative masses with total exactly one; this is the path
  /// used by the algebraic operations, whose outputs are normalized by construction.
  static FiniteDist merge(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  const Rational& min_value() const { return atoms_.front().value; }
  const Rational& max_value() const { return atoms_.back().value; }

  /// P(X = v); zero when v is not an atom.
  Rational prob_at(const Rational& v) const;

  /// P(X <= v), exact.
  Rational cdf(const Rational& v) const;

  friend bool operator==(const FiniteDist&, const FiniteDist&) = default;

 private:
  explicit FiniteDist(std::vector<Atom> sorted) : atoms_(std::move(sorted)) {}
  std::vector<Atom> atoms_;
};

inline FiniteDist make_dist(std::vector<Atom> atoms) { return FiniteDist::make(std::move(atoms)); }

FiniteDist point_mass(const Rational& v);
FiniteDist bernoulli(const Rational& p);
FiniteDist rademacher();

Rational mean(const FiniteDist& d);
Rational second_moment(const FiniteDist& d);
Rational variance(const FiniteDist& d);

/// Affine image (v - mean)/sigma. sigma is a rational approximant of the true
/// standard deviation accurate to `digits` decimal digits, so the mean is exactly
/// zero and the variance is one up to ~10^-digits. Throws ZeroVariance.
FiniteDist standardize(const FiniteDist& d, unsigned digits = 60);

/// Law of the sum of independent draws from a and b.
FiniteDist convolve(const FiniteDist& a, const FiniteDist& b);

inline constexpr std::size_t kExactAtomBudget = 2'000'000;

/// Upper bound on the atom count of the n-fold sum: the smaller of the number of
/// multisets of size n and the number of points on the sum's lattice.
double projected_atom_count(const FiniteDist& d, long n);

/// Exact law of the n-fold sum. Throws ExactBudgetExceeded when the projected
/// atom count exceeds `budget`.
FiniteDist convolve_power_exact(const FiniteDist& d, long n, std::size_t budget = kExactAtomBudget);

/// P(Sum <= x*sqrt(n)), i.e. the CDF of Sum/sqrt(n) at x. Atoms within one ulp
/// above x*sqrt(n) count as included.
double cdf_scaled(const FiniteDist& sum_law, long n, double x);
std::vector<double> cdf_scaled(const FiniteDist& sum_law, long n, std::span<const double> xs);

}  // namespace cltlab
