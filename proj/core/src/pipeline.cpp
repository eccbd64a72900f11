#include "cltlab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cltlab/error.hpp"
#include "cltlab/normal.hpp"
#include "cltlab/rng.hpp"

namespace cltlab {

namespace {

double sup_error(const SumLaw& law, long n, const std::vector<double>& grid) {
  const std::vector<double> cdf = cdf_scaled(law, n, grid);
  double sup = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) sup = std::max(sup, std::abs(cdf[i] - phi(grid[i])));
  return sup;
}

}  // namespace

void CltExperiment::validate() const {
  if (!mean(dist).is_zero()) throw Error(ErrorKind::NonZeroMean, "experiment law must have mean exactly 0");
  const Rational var_err = (variance(dist) - Rational(1)).abs();
  if (var_err > Rational(BigInt(1), BigInt("10000000000000000000000000000000000000000"))) {
    throw Error(ErrorKind::InvalidArgument, "experiment law must have variance 1 (standardize it first)");
  }
  if (n_list.empty()) throw Error(ErrorKind::InvalidArgument, "n_list is empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw Error(ErrorKind::InvalidArgument, "n_list entries must be >= 1");
    if (i > 0 && n_list[i] <= n_list[i - 1]) {
      throw Error(ErrorKind::InvalidArgument, "n_list must be strictly increasing");
    }
  }
  if (x_grid.empty()) throw Error(ErrorKind::InvalidArgument, "x_grid is empty");
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0)) throw Error(ErrorKind::InvalidArgument, "grid step must be > 0");
  if (!(hi >= lo)) throw Error(ErrorKind::InvalidArgument, "grid needs lo <= hi");
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

std::vector<double> default_x_grid() { return make_grid(-4.0, 4.0, 0.05); }

std::vector<ConvergenceRow> run_clt_table(const CltExperiment& e) {
  e.validate();
  std::vector<ConvergenceRow> rows;
  rows.reserve(e.n_list.size());
  if (e.mode == ConvolutionMode::Exact) {
    const long n_max = e.n_list.back();
    if (projected_atom_count(e.dist, n_max) > static_cast<double>(e.exact_budget)) {
      // Fail before doing any work; the message comes from the same check.
      (void)convolve_power_exact(e.dist, n_max, e.exact_budget);
    }
    FiniteDist acc = e.dist;
    long current = 1;
    for (long n : e.n_list) {
      for (; current < n; ++current) acc = convolve(acc, e.dist);
      rows.push_back({n, sup_error(SumLaw(acc), n, e.x_grid), "sup_cdf_err"});
    }
  } else {
    const LatticeDist base = to_lattice(e.dist);
    LatticeDist acc = base;
    long current = 1;
    for (long n : e.n_list) {
      for (; current < n; ++current) acc = convolve(acc, base);
      rows.push_back({n, sup_error(SumLaw(acc), n, e.x_grid), "sup_cdf_err"});
    }
  }
  return rows;
}

Rational verify_variance_accounting(const Mixture& m) {
  Rational acc;
  for (const auto& c : m.components()) acc += c.weight * c.component.second_moment();
  return acc;
}

ThetaFrequencyReport verify_theta_lln(std::span<const Rational> weights, long n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "lln-check needs n >= 1");
  const CategoricalSampler sampler(weights);
  SeededRng rng(seed);
  ThetaFrequencyReport report;
  report.m = weights.size();
  report.n = n;
  report.weights.assign(weights.begin(), weights.end());
  report.counts.assign(weights.size(), 0);
  for (long k = 0; k < n; ++k) ++report.counts[sampler(rng)];
  Rational total;
  for (const auto& w : weights) total += w;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double freq = static_cast<double>(report.counts[i]) / static_cast<double>(n);
    report.frequencies.push_back(freq);
    report.max_abs_freq_err =
        std::max(report.max_abs_freq_err, std::abs(freq - (weights[i] / total).to_double()));
  }
  return report;
}

ThetaFrequencyReport verify_theta_lln(const Mixture& m, long n, std::uint64_t seed) {
  const std::vector<Rational> w = m.weights();
  return verify_theta_lln(w, n, seed);
}

FiniteDist grouped_sum_law(const TwoValued& y, long count) {
  if (count < 0) throw Error(ErrorKind::InvalidArgument, "negative group size");
  if (count == 0 || y.degenerate()) return point_mass(Rational(0));
  const auto c = static_cast<unsigned long>(count);
  std::vector<Atom> atoms;
  atoms.reserve(c + 1);
  const Rational q = y.prob_neg();
  for (unsigned long j = 0; j <= c; ++j) {
    const Rational value = y.pos() * Rational(static_cast<long>(j)) - y.neg() * Rational(static_cast<long>(c - j));
    const Rational prob = Rational(binomial(c, j), BigInt(1)) * y.prob_pos().pow(j) * q.pow(c - j);
    atoms.push_back({value, prob});
  }
  return FiniteDist::make(std::move(atoms));
}

FiniteDist path_sum_law(const Mixture& m, std::span<const long> counts, std::size_t budget) {
  if (counts.size() != m.size()) throw Error(ErrorKind::InvalidArgument, "one count per component required");
  double projected = 1.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (!m.components()[i].component.degenerate()) projected *= static_cast<double>(counts[i] + 1);
  }
  if (projected > static_cast<double>(budget)) {
    throw Error(ErrorKind::ExactBudgetExceeded,
                "grouped path sum projects " + std::to_string(static_cast<long long>(projected)) +
                    " atoms, above the exact budget of " + std::to_string(budget));
  }
  FiniteDist law = point_mass(Rational(0));
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const TwoValued& y = m.components()[i].component;
    if (y.degenerate() || counts[i] == 0) continue;
    law = convolve(law, grouped_sum_law(y, counts[i]));
  }
  return law;
}

double run_mixture_path_cdf(const Mixture& m, long n, double x, std::uint64_t seed, std::size_t budget) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "path length must be >= 1");
  const std::vector<Rational> w = m.weights();
  const CategoricalSampler sampler(w);
  SeededRng rng(seed);
  std::vector<long> counts(m.size(), 0);
  for (long k = 0; k < n; ++k) ++counts[sampler(rng)];
  return cdf_scaled(path_sum_law(m, counts, budget), n, x);
}

PathEnsemble mixture_path_ensemble(const Mixture& m, long n, double x, int paths, std::uint64_t seed,
                                   std::size_t budget) {
  if (paths < 2) throw Error(ErrorKind::InvalidArgument, "path ensemble needs at least 2 paths");
  PathEnsemble e;
  e.values.reserve(static_cast<std::size_t>(paths));
  for (int k = 0; k < paths; ++k) {
    e.values.push_back(run_mixture_path_cdf(m, n, x, child_seed(seed, static_cast<std::uint64_t>(k)), budget));
  }
  double sum = 0.0;
  for (double v : e.values) sum += v;
  e.mean = sum / paths;
  double ss = 0.0;
  for (double v : e.values) ss += (v - e.mean) * (v - e.mean);
  e.std_error = std::sqrt(ss / (paths - 1)) / std::sqrt(static_cast<double>(paths));
  return e;
}

}  // namespace cltlab
