#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cltlab/rational.hpp"

namespace cltlab {

/// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed-splitting rule for parallel tasks: child = splitmix64(seed ^ splitmix64(index)).
/// Never share one generator across tasks; derive a child per task index instead.
constexpr std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(seed ^ splitmix64(index));
}

/// Deterministic generator: std::mt19937_64 seeded with splitmix64(seed).
/// The engine's output sequence is fixed by the C++ standard, and every
/// derived variate below is computed by hand, so streams are identical
/// across standard libraries.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1); safe to feed into inverse CDFs with poles at 0 or 1.
  double uniform_open01() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }
  bool bernoulli(const Rational& p) { return bernoulli(p.to_double()); }

  SeededRng child(std::uint64_t index) const { return SeededRng(child_seed(seed_, index)); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Inverse-CDF sampler over fixed weights (given exactly, sampled in float64).
class CategoricalSampler {
 public:
  explicit CategoricalSampler(std::span<const Rational> weights);
  std::size_t operator()(SeededRng& rng) const;
  std::size_t size() const noexcept { return cumulative_.size(); }

 private:
  std::vector<double> cumulative_;
};

}  // namespace cltlab
