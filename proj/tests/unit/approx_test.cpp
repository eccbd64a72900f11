#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "cltlab/approx.hpp"
#include "cltlab/error.hpp"
#include "cltlab/normal.hpp"
#include "cltlab/rng.hpp"

namespace cltlab {
namespace {

const Rational kTiny(BigInt(1), BigInt("1" + std::string(40, '0')));

std::vector<ContinuousSource> catalog() {
  return {ContinuousSource::from_name("uniform"), ContinuousSource::from_name("exp"),
          ContinuousSource::from_name("laplace"), ContinuousSource::two_point_noise(0.3)};
}

TEST(Source, StandardizedMoments) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 61>;
  for (const auto& src : catalog()) {
    EXPECT_NEAR(src.std_integral(0.0, 1.0), 0.0, 1e-12) << src.name();
    const double second = Kronrod::integrate(
        [&](double u) {
          const double x = src.std_inv_cdf(u);
          return x * x;
        },
        0.0, 1.0, 20, 1e-12);
    EXPECT_NEAR(second, 1.0, 1e-8) << src.name();
  }
}

TEST(Source, ClosedFormIntegralsMatchQuadrature) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 61>;
  for (const auto& src : catalog()) {
    for (auto [a, b] : {std::pair{0.0, 0.1}, {0.1, 0.45}, {0.4, 0.6}, {0.55, 0.9}, {0.9, 1.0}}) {
      const double quad = Kronrod::integrate([&](double u) { return src.std_inv_cdf(u); }, a, b, 20, 1e-13);
      EXPECT_NEAR(src.std_integral(a, b), quad, 1e-10) << src.name() << " [" << a << "," << b << "]";
    }
  }
}

TEST(Source, UnknownFamily) { EXPECT_THROW((void)ContinuousSource::from_name("cauchy"), Error); }

TEST(Quantize, TwoPointIsFixedPoint) {
  const ContinuousSource src = ContinuousSource::two_point_noise(0.0);
  for (double eta : {0.5, 0.01, 1e-6}) {
    const QuantizerResult q = quantize(src, eta);
    EXPECT_EQ(q.simple, rademacher());
    EXPECT_EQ(q.eta_achieved, 0.0);
    EXPECT_EQ(q.cells, 2u);
  }
}

TEST(Quantize, UniformNeedsSixteenCells) {
  const ContinuousSource src = ContinuousSource::from_name("uniform");
  const QuantizerResult q = quantize(src, 0.01);
  EXPECT_EQ(q.cells, 16u);
  EXPECT_LE(q.eta_achieved, 0.01);
  // Before correction: width^2/12 per cell; after scaling by 1/sqrt(1 - 1/K^2): 2 - 2 sqrt(1 - 1/K^2).
  EXPECT_NEAR(q.schedule.back().second, uniform_cell_error_closed_form(16), 1e-10);
  EXPECT_NEAR(uniform_cell_error_closed_form(16), 1.0 / 256.0, 1e-15);
  EXPECT_NEAR(q.eta_achieved, 2.0 - 2.0 * std::sqrt(1.0 - 1.0 / 256.0), 1e-10);
  EXPECT_EQ(q.simple.size(), 16u);
}

TEST(Quantize, ExponentialScheduleMatchesReference) {
  // Before correction E[(X - Y)^2] = 1 - sum_j m_j^2 / K with closed-form cell means m_j.
  const QuantizerResult q = quantize(ContinuousSource::from_name("exp"), 1e-3);
  for (const auto& [k, v] : q.schedule) {
    if (k == 2) EXPECT_NEAR(v, 0.519546986081799, 1e-11);
    if (k == 256) EXPECT_NEAR(v, 0.00421875593321251, 1e-11);
    if (k == 4096) EXPECT_NEAR(v, 0.000263746751577869, 1e-11);
  }
  EXPECT_EQ(q.cells, 4096u);
}

TEST(Quantize, ExactMomentsAfterCorrection) {
  for (const auto& src : catalog()) {
    const QuantizerResult q = quantize(src, 0.01);
    EXPECT_TRUE(mean(q.simple).is_zero()) << src.name();
    EXPECT_LT((variance(q.simple) - Rational(1)).abs(), kTiny) << src.name();
    EXPECT_LE(q.eta_achieved, q.eta_requested) << src.name();
    EXPECT_NEAR(quantization_error(src, q.cell_values), q.eta_achieved, 1e-15);
  }
}

TEST(Quantize, MeansIncreaseAndScheduleNonincreasing) {
  for (const auto& src : catalog()) {
    const QuantizerResult q = quantize(src, 1e-3);
    for (std::size_t j = 1; j < q.cell_values.size(); ++j) EXPECT_LT(q.cell_values[j - 1], q.cell_values[j]);
    for (std::size_t i = 1; i < q.schedule.size(); ++i) {
      EXPECT_LE(q.schedule[i].second, q.schedule[i - 1].second * (1 + 1e-12)) << src.name();
      EXPECT_EQ(q.schedule[i].first, 2 * q.schedule[i - 1].first);
    }
  }
}

TEST(Quantize, UniformLandsOnShortLattice) {
  const QuantizerResult q = quantize(ContinuousSource::from_name("uniform"), 0.01);
  Rational step;
  for (const auto& a : q.simple.atoms()) step = gcd(step, a.value - q.simple.min_value());
  EXPECT_EQ((q.simple.max_value() - q.simple.min_value()) / step, Rational(15));
}

TEST(Quantize, BudgetError) {
  try {
    (void)quantize(ContinuousSource::from_name("exp"), 1e-6, 64);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EtaTooSmallForBudget);
  }
  EXPECT_THROW((void)quantize(ContinuousSource::from_name("exp"), 0.0), Error);
}

TEST(Coupling, DeterministicInU) {
  const ContinuousSource src = ContinuousSource::from_name("laplace");
  const QuantizerResult q = quantize(src, 0.01);
  for (double u : {0.01, 0.3, 0.5, 0.77, 0.999}) {
    const CoupledPair a = coupled_pair(src, q, u);
    const CoupledPair b = coupled_pair(src, q, u);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.y, b.y);
  }
}

TEST(Coupling, MonteCarloMatchesQuadrature) {
  const ContinuousSource src = ContinuousSource::from_name("uniform");
  const QuantizerResult q = quantize(src, 0.01);
  SeededRng rng(2718);
  constexpr long kDraws = 1'000'000;
  double s1 = 0, s2 = 0, y1 = 0, y2 = 0;
  for (long i = 0; i < kDraws; ++i) {
    const CoupledPair p = coupled_sample(src, q, rng);
    const double d2 = (p.x - p.y) * (p.x - p.y);
    s1 += d2;
    s2 += d2 * d2;
    y1 += p.y;
    y2 += p.y * p.y;
  }
  const double m = s1 / kDraws;
  const double sd = std::sqrt(s2 / kDraws - m * m);
  EXPECT_LE(std::abs(m - q.eta_achieved), 3 * sd / std::sqrt(static_cast<double>(kDraws)));
  const double ym = y1 / kDraws;
  const double yv = y2 / kDraws - ym * ym;
  EXPECT_LE(std::abs(ym), 3 / std::sqrt(static_cast<double>(kDraws)));
  EXPECT_NEAR(yv, 1.0, 0.01);
}

TEST(Chebyshev, ExactCouplingNeverExceeds) {
  ChebyshevCheckConfig cfg;
  cfg.samples = 2000;
  const ChebyshevReport r = chebyshev_check(ContinuousSource::two_point_noise(0.0), cfg);
  EXPECT_EQ(r.empirical, 0.0);
  EXPECT_EQ(r.cdf_gap, 0.0);
  EXPECT_TRUE(r.pass);
}

TEST(Chebyshev, UniformBoundHoldsAndIsNFree) {
  const ContinuousSource src = ContinuousSource::from_name("uniform");
  ChebyshevCheckConfig cfg;
  cfg.delta = 0.5;
  cfg.epsilon = 0.04;
  cfg.samples = 10'000;
  cfg.seed = 3;
  const QuantizerResult q = quantize(src, cfg.eta());
  cfg.n = 100;
  const ChebyshevReport a = chebyshev_check(src, q, cfg);
  cfg.n = 400;
  const ChebyshevReport b = chebyshev_check(src, q, cfg);
  EXPECT_DOUBLE_EQ(a.bound, 0.04);
  EXPECT_DOUBLE_EQ(a.bound, b.bound);
  EXPECT_LE(a.empirical, 0.04 + 0.006);
  EXPECT_LE(b.empirical, 0.04 + 0.006);
  EXPECT_TRUE(a.pass && b.pass && a.cdf_pass && b.cdf_pass);
}

TEST(Chebyshev, ConfigValidation) {
  ChebyshevCheckConfig cfg;
  cfg.delta = 0;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Bracket, UniformAtLargeN) {
  // Lattice law of T_n for n = 4096 and Monte Carlo S_n bracket P(S_n <= x)
  // between P(T_n <= x -+ delta) -+ eta/delta^2.
  const ContinuousSource src = ContinuousSource::from_name("uniform");
  const double delta = 0.5;
  const QuantizerResult q = quantize(src, delta * delta * 0.04);
  for (double x : {-1.0, 0.0, 0.7}) {
    const BracketReport r = bracket_check(src, q, delta, 4096, x, 4000, 11);
    EXPECT_TRUE(r.pass) << x;
    EXPECT_LE(r.t_lower, r.t_at);
    EXPECT_LE(r.t_at, r.t_upper);
    EXPECT_NEAR(r.t_at, phi(x), 0.01) << x;
    EXPECT_LE(std::abs(r.p_s - r.phi_x), std::abs(r.t_at - r.phi_x) + (r.t_upper - r.t_lower) +
                                              r.coupling_bound + r.mc_band);
  }
}

}  // namespace
}  // namespace cltlab
