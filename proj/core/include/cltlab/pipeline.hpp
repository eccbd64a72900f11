#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cltlab/decompose.hpp"
#include "cltlab/dml.hpp"
#include "cltlab/finite_dist.hpp"
#include "cltlab/lattice.hpp"

namespace cltlab {

/// Sup-over-grid CLT experiment for a standardized simple law.
struct CltExperiment {
  FiniteDist dist;
  std::vector<long> n_list;
  std::vector<double> x_grid;
  ConvolutionMode mode = ConvolutionMode::LatticeFloat;
  std::size_t exact_budget = kExactAtomBudget;

  /// Checks mean(dist) == 0 exactly, |variance(dist) - 1| <= 1e-40,
  /// n_list nonempty, positive and strictly increasing, grid nonempty.
  void validate() const;
};

/// lo, lo+step, ..., hi (inclusive up to rounding), built as lo + i*step.
std::vector<double> make_grid(double lo, double hi, double step);

/// 161 points on [-4, 4].
std::vector<double> default_x_grid();

/// One row per n: sup over the grid of |P(S_n <= x) - phi(x)|. Powers are built
/// incrementally along n_list. Propagates ExactBudgetExceeded.
std::vector<ConvergenceRow> run_clt_table(const CltExperiment& e);

/// sum_i w_i E[Y_i^2]; equals the variance of the recomposed law.
Rational verify_variance_accounting(const Mixture& m);

struct ThetaFrequencyReport {
  std::size_t m = 0;
  long n = 0;
  std::vector<Rational> weights;
  std::vector<long> counts;
  std::vector<double> frequencies;
  double max_abs_freq_err = 0.0;
};

/// Draws theta_1..theta_n i.i.d. by the weights and compares empirical
/// frequencies with the weights.
ThetaFrequencyReport verify_theta_lln(std::span<const Rational> weights, long n, std::uint64_t seed);
ThetaFrequencyReport verify_theta_lln(const Mixture& m, long n, std::uint64_t seed);

/// Law of `count` i.i.d. copies of y summed: support j*a - (count-j)*b,
/// j = 0..count, with binomial weights.
FiniteDist grouped_sum_law(const TwoValued& y, long count);

/// Exact law of sum_i (sum of counts[i] copies of component i).
FiniteDist path_sum_law(const Mixture& m, std::span<const long> counts,
                        std::size_t budget = kExactAtomBudget);

/// Draws one theta-path of length n from `seed`, freezes it, and returns the
/// exact conditional probability P((Y_{1,i_1}+...+Y_{n,i_n})/sqrt(n) <= x).
double run_mixture_path_cdf(const Mixture& m, long n, double x, std::uint64_t seed,
                            std::size_t budget = kExactAtomBudget);

struct PathEnsemble {
  std::vector<double> values;
  double mean = 0.0;
  double std_error = 0.0;  // sample std / sqrt(paths)
};

/// run_mixture_path_cdf over `paths` paths; path k uses child_seed(seed, k).
PathEnsemble mixture_path_ensemble(const Mixture& m, long n, double x, int paths, std::uint64_t seed,
                                   std::size_t budget = kExactAtomBudget);

}  // namespace cltlab
