#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cli.hpp"
#include "cltlab/approx.hpp"
#include "cltlab/binomial.hpp"
#include "cltlab/decompose.hpp"
#include "cltlab/dist_io.hpp"
#include "cltlab/lattice.hpp"
#include "cltlab/normal.hpp"
#include "cltlab/pipeline.hpp"
#include "cltlab/rng.hpp"

namespace cltlab::cli {

namespace {

long uniform_int(SeededRng& rng, long lo, long hi) {
  return lo + static_cast<long>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

// 3..8 distinct rational values with denominators up to 6, rational masses.
FiniteDist random_dist(SeededRng& rng) {
  const long k = uniform_int(rng, 3, 8);
  std::vector<Rational> values;
  while (static_cast<long>(values.size()) < k) {
    const Rational v(BigInt(uniform_int(rng, -30, 30)), BigInt(uniform_int(rng, 1, 6)));
    if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
  }
  std::vector<long> raw(static_cast<std::size_t>(k));
  for (auto& r : raw) r = uniform_int(rng, 1, 20);
  const long total = std::accumulate(raw.begin(), raw.end(), 0L);
  std::vector<Atom> atoms;
  for (long i = 0; i < k; ++i) {
    atoms.push_back({values[static_cast<std::size_t>(i)],
                     Rational(BigInt(raw[static_cast<std::size_t>(i)]), BigInt(total))});
  }
  return make_dist(std::move(atoms));
}

FiniteDist centered(const FiniteDist& d) {
  const Rational mu = mean(d);
  std::vector<Atom> atoms;
  for (const auto& a : d.atoms()) atoms.push_back({a.value - mu, a.prob});
  return make_dist(std::move(atoms));
}

class Suite {
 public:
  void record(std::string property, bool pass, std::string detail = {}) {
    outcomes_.push_back({std::move(property), pass, std::move(detail)});
  }
  std::vector<VerifyOutcome> take() { return std::move(outcomes_); }

 private:
  std::vector<VerifyOutcome> outcomes_;
};

std::string count_detail(int failures, int trials) {
  return std::to_string(trials - failures) + "/" + std::to_string(trials);
}

}  // namespace

std::vector<VerifyOutcome> run_verify_suite(std::uint64_t seed, int trials) {
  Suite suite;
  SeededRng rng(seed);

  {
    int bad_recompose = 0, bad_count = 0, bad_variance = 0, bad_json = 0;
    for (int t = 0; t < trials; ++t) {
      const FiniteDist d = centered(random_dist(rng));
      const Mixture m = decompose(d);
      if (!(recompose(m) == d)) ++bad_recompose;
      if (m.size() > d.size()) ++bad_count;
      if (!(verify_variance_accounting(m) == variance(d))) ++bad_variance;
      if (!(mixture_from_json(mixture_to_json(m)).components() == m.components())) ++bad_json;
    }
    suite.record("recompose(decompose(d)) == d", bad_recompose == 0, count_detail(bad_recompose, trials));
    suite.record("component count <= atom count", bad_count == 0, count_detail(bad_count, trials));
    suite.record("sum w_i E[Y_i^2] == variance(d)", bad_variance == 0, count_detail(bad_variance, trials));
    suite.record("mixture JSON round trip", bad_json == 0, count_detail(bad_json, trials));
  }

  {
    int bad_text = 0, bad_json = 0, bad_comm = 0, bad_moments = 0;
    for (int t = 0; t < trials; ++t) {
      const FiniteDist a = random_dist(rng);
      const FiniteDist b = random_dist(rng);
      if (!(parse_dist_text(format_dist_text(a)) == a)) ++bad_text;
      if (!(dist_from_json(dist_to_json(a)) == a)) ++bad_json;
      const FiniteDist ab = convolve(a, b);
      if (!(ab == convolve(b, a))) ++bad_comm;
      if (!(mean(ab) == mean(a) + mean(b)) || !(variance(ab) == variance(a) + variance(b))) ++bad_moments;
    }
    suite.record("dist text round trip", bad_text == 0, count_detail(bad_text, trials));
    suite.record("dist JSON round trip", bad_json == 0, count_detail(bad_json, trials));
    suite.record("convolution commutes", bad_comm == 0, count_detail(bad_comm, trials));
    suite.record("mean and variance add under convolution", bad_moments == 0, count_detail(bad_moments, trials));
  }

  {
    double worst = 0.0;
    int bad_monotone = 0;
    const int reps = std::max(1, trials / 10);
    const std::vector<double> grid = make_grid(-3.0, 3.0, 0.25);
    for (int t = 0; t < reps; ++t) {
      const FiniteDist d = random_dist(rng);
      const long n = uniform_int(rng, 1, 6);
      const auto exact = cdf_scaled(convolve_power_exact(d, n), n, grid);
      const auto lattice = cdf_scaled(convolve_power_lattice(d, n), n, grid);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        worst = std::max(worst, std::abs(exact[i] - lattice[i]));
        if (i > 0 && exact[i] < exact[i - 1]) ++bad_monotone;
      }
    }
    suite.record("lattice CDF matches exact CDF within 1e-12", worst <= 1e-12, "max " + format_double(worst));
    suite.record("scaled CDF is monotone", bad_monotone == 0);
  }

  {
    double worst = 0.0, worst_sym = 0.0;
    for (int i = -12; i <= 12; ++i) {
      const double x = 0.5 * i;
      worst = std::max(worst, std::abs(phi(x) - phi_oracle(x, 1e-14)));
      worst_sym = std::max(worst_sym, std::abs(phi(x) + phi(-x) - 1.0));
    }
    suite.record("phi agrees with quadrature oracle within 1e-12", worst <= 1e-12, "max " + format_double(worst));
    suite.record("phi(x) + phi(-x) == 1 within 2e-12", worst_sym <= 2e-12, "max " + format_double(worst_sym));
  }

  {
    bool ok = true;
    for (long n : {1L, 7L, 50L}) {
      for (const char* p : {"1/10", "1/2", "7/9"}) {
        const BinomialSpec spec = BinomialSpec::make(n, Rational::parse(p));
        const auto table = binom_cdf_table(spec);
        ok = ok && table.back() == Rational(1) && table.front() == binom_pmf(spec, 0);
      }
    }
    suite.record("binomial CDF reaches exactly 1", ok);

    bool decreasing = true;
    double prev = stirling_ratio(1);
    for (long n = 2; n <= 1024; n *= 2) {
      const double r = stirling_ratio(n);
      decreasing = decreasing && r < prev && r > 1.0;
      prev = r;
    }
    suite.record("stirling ratio decreases toward 1", decreasing);
  }

  {
    const QuantizerResult q = quantize(ContinuousSource::from_name("uniform"), 0.01);
    const double var_err = (variance(q.simple) - Rational(1)).abs().to_double();
    suite.record("quantized law has mean 0 and variance 1", mean(q.simple).is_zero() && var_err <= 1e-12,
                 "variance - 1 = " + format_double(var_err));
    suite.record("quantizer meets eta", q.eta_achieved <= q.eta_requested,
                 "eta_achieved " + format_double(q.eta_achieved));
  }

  return suite.take();
}

}  // namespace cltlab::cli
