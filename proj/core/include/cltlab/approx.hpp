#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cltlab/finite_dist.hpp"

namespace cltlab {

class SeededRng;

enum class SourceFamily { Uniform, ExponentialCentered, Laplace, TwoPointNoise };

/// Finite-variance source with a closed-form inverse CDF. The quantizer and the
/// coupled sampler work with the standardized variable (X - mean)/sd.
class ContinuousSource {
 public:
  static ContinuousSource uniform(double lo, double hi);
  static ContinuousSource exponential_centered(double rate);
  static ContinuousSource laplace(double location, double scale);
  /// +-1 with probability 1/2 each, plus independent uniform noise on [-h, h], 0 <= h < 1.
  static ContinuousSource two_point_noise(double half_width);

  /// "uniform" | "exp" | "laplace" | "two-point" with unit-variance defaults
  /// (also accepts "exponential-centered" and "two-point-plus-noise").
  static ContinuousSource from_name(std::string_view family, double noise = 0.0);

  SourceFamily family() const noexcept { return family_; }
  std::string name() const;
  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return sd_ * sd_; }

  double inv_cdf(double u) const;
  double std_inv_cdf(double u) const { return (inv_cdf(u) - mean_) / sd_; }

  /// Closed-form integral of std_inv_cdf over [u0, u1].
  double std_integral(double u0, double u1) const;

 private:
  ContinuousSource(SourceFamily f, double p0, double p1);
  double raw_integral(double u0, double u1) const;

  SourceFamily family_;
  double p0_;
  double p1_;
  double mean_ = 0.0;
  double sd_ = 1.0;
};

struct QuantizerResult {
  FiniteDist simple;                   // mean 0, variance 1 (exact rationals)
  double eta_requested = 0.0;
  double eta_achieved = 0.0;           // quadrature of E[(X - Y)^2] after correction
  std::size_t cells = 0;               // K, equal-probability quantile cells
  std::vector<double> boundaries;      // standardized x at u = j/K, j = 1..K-1
  std::vector<double> cell_values;     // corrected Y on each cell
  std::vector<std::pair<std::size_t, double>> schedule;  // (K, E[(X - Y)^2] before correction)
};

inline constexpr std::size_t kMaxQuantizerCells = std::size_t{1} << 20;

/// Conditional-mean quantizer on equal-probability cells.
///
/// K doubles from 1 until the integrated E[(X - Y)^2] is at most eta/2; the
/// conditional means are then snapped to exact rationals (onto an exact
/// arithmetic progression when they form one), shifted and scaled to mean 0
/// and variance 1, and E[(X - Y)^2] is integrated again against the corrected
/// values. If that exceeds eta, K keeps doubling. Throws EtaTooSmallForBudget
/// when K would exceed max_cells.
QuantizerResult quantize(const ContinuousSource& src, double eta,
                         std::size_t max_cells = kMaxQuantizerCells);

/// Integrated E[(X - y_j)^2] over the cells of a quantizer (adaptive Gauss-Kronrod).
double quantization_error(const ContinuousSource& src, const std::vector<double>& cell_values);

/// Closed-form E[(X - Y)^2] for K equal cells of a standardized uniform with the
/// uncorrected conditional means: each cell contributes width^2/12 with
/// width = 2*sqrt(3)/K, so the total is 1/K^2.
double uniform_cell_error_closed_form(std::size_t cells);

struct CoupledPair {
  double x;
  double y;
};

/// x = standardized inverse CDF at u, y = corrected value of the cell holding x.
CoupledPair coupled_pair(const ContinuousSource& src, const QuantizerResult& q, double u);
CoupledPair coupled_sample(const ContinuousSource& src, const QuantizerResult& q, SeededRng& rng);

struct ChebyshevCheckConfig {
  double delta = 0.5;
  double epsilon = 0.04;
  long n = 100;
  long samples = 10'000;
  std::uint64_t seed = 0;
  double x = 0.0;  // probe point for the CDF comparison

  double eta() const { return delta * delta * epsilon; }
  void validate() const;
};

struct ChebyshevReport {
  double eta = 0.0;
  double eta_achieved = 0.0;
  std::size_t cells = 0;
  double bound = 0.0;      // eta / delta^2
  double empirical = 0.0;  // fraction of replications with |S_n - T_n| > delta
  double mc_band = 0.0;    // 3 sqrt(eps (1 - eps) / samples)
  bool pass = false;
  double p_s = 0.0;        // empirical P(S_n <= x)
  double p_t = 0.0;        // empirical P(T_n <= x)
  double cdf_gap = 0.0;
  double cdf_gap_band = 0.0;
  bool cdf_pass = false;
};

/// Simulates `samples` replications of n coupled pairs (replication r uses
/// child_seed(seed, r)), forms S_n and T_n, and compares P(|S_n - T_n| > delta)
/// with eta/delta^2, and |P(S_n <= x) - P(T_n <= x)| with 2 eps.
ChebyshevReport chebyshev_check(const ContinuousSource& src, const ChebyshevCheckConfig& cfg);
ChebyshevReport chebyshev_check(const ContinuousSource& src, const QuantizerResult& q,
                                const ChebyshevCheckConfig& cfg);

struct BracketReport {
  double p_s = 0.0;          // Monte Carlo P(S_n <= x)
  double mc_band = 0.0;      // 3 sqrt(p(1-p)/samples)
  double t_lower = 0.0;      // P(T_n <= x - delta), lattice law
  double t_at = 0.0;         // P(T_n <= x)
  double t_upper = 0.0;      // P(T_n <= x + delta)
  double phi_x = 0.0;
  double coupling_bound = 0.0;  // eta_achieved / delta^2
  bool pass = false;
};

/// P(T_n <= x - delta) - P(|S-T|>delta) <= P(S_n <= x) <= P(T_n <= x + delta) + P(|S-T|>delta),
/// with T_n's law from lattice convolution of the quantized law and P(S_n <= x)
/// from Monte Carlo; the coupling term is bounded by Chebyshev.
BracketReport bracket_check(const ContinuousSource& src, const QuantizerResult& q, double delta, long n,
                            double x, long samples, std::uint64_t seed);

}  // namespace cltlab
