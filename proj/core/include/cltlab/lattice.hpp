#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "cltlab/finite_dist.hpp"
#include "cltlab/rational.hpp"

namespace cltlab {

/// Distribution on offset + k*step (k = 0..probs.size()-1) with float64 masses.
/// Support points stay exact; only the masses are approximate.
struct LatticeDist {
  Rational offset;
  Rational step;
  std::vector<double> probs;

  Rational value_at(std::size_t k) const { return offset + step * Rational(static_cast<long>(k)); }
  double total_mass() const;
};

inline constexpr std::size_t kLatticeLengthBudget = std::size_t{1} << 27;

/// Coarsest common lattice holding every atom: offset = min value,
/// step = gcd of (v - min). Throws LatticeBudgetExceeded when the lattice
/// would need more than `max_length` points.
LatticeDist to_lattice(const FiniteDist& d, std::size_t max_length = kLatticeLengthBudget);

/// Dense convolution of two distributions on the same step, with
/// Neumaier-compensated accumulation per output cell.
LatticeDist convolve(const LatticeDist& a, const LatticeDist& b);

/// Law of the n-fold sum by n-1 dense convolutions with the base lattice.
LatticeDist convolve_power_lattice(const FiniteDist& d, long n,
                                   std::size_t max_length = kLatticeLengthBudget);

double cdf_scaled(const LatticeDist& sum_law, long n, double x);
std::vector<double> cdf_scaled(const LatticeDist& sum_law, long n, std::span<const double> xs);

enum class ConvolutionMode { Exact, LatticeFloat };

using SumLaw = std::variant<FiniteDist, LatticeDist>;

SumLaw convolve_power(const FiniteDist& d, long n, ConvolutionMode mode,
                      std::size_t exact_budget = kExactAtomBudget);

double cdf_scaled(const SumLaw& sum_law, long n, double x);
std::vector<double> cdf_scaled(const SumLaw& sum_law, long n, std::span<const double> xs);

}  // namespace cltlab
