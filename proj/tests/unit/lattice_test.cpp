#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cltlab/error.hpp"
#include "cltlab/lattice.hpp"
#include "oracles.hpp"

namespace cltlab {
namespace {

Rational q(long n, long d) { return Rational(BigInt(n), BigInt(d)); }

FiniteDist uniform3() { return make_dist({{Rational(1), q(1, 3)}, {Rational(0), q(1, 3)}, {Rational(-1), q(1, 3)}}); }

TEST(ToLattice, CoarsestCommonLattice) {
  const LatticeDist l = to_lattice(make_dist({{Rational(-1), q(1, 2)}, {Rational(0), q(1, 4)}, {Rational(2), q(1, 4)}}));
  EXPECT_EQ(l.offset, Rational(-1));
  EXPECT_EQ(l.step, Rational(1));
  ASSERT_EQ(l.probs.size(), 4u);
  EXPECT_EQ(l.probs[2], 0.0);
  EXPECT_EQ(l.probs[3], 0.25);

  const LatticeDist r = to_lattice(rademacher());
  EXPECT_EQ(r.step, Rational(2));
  EXPECT_EQ(r.probs.size(), 2u);

  const LatticeDist p = to_lattice(point_mass(q(3, 7)));
  EXPECT_EQ(p.probs.size(), 1u);
  EXPECT_EQ(p.value_at(0), q(3, 7));
}

TEST(ToLattice, StandardizedLawStaysShort) {
  // sigma is a 60-digit approximant, but the values share it as a common factor.
  const LatticeDist l = to_lattice(standardize(uniform3()));
  EXPECT_EQ(l.probs.size(), 3u);
  EXPECT_EQ(l.offset / l.step, Rational(-1));
}

TEST(ToLattice, RefusesHugeLattice) {
  const FiniteDist d = make_dist({{Rational(0), q(1, 2)}, {Rational(BigInt(1), BigInt(1000003)), q(1, 4)},
                                  {Rational(7919), q(1, 4)}});
  try {
    (void)to_lattice(d, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LatticeBudgetExceeded);
  }
}

TEST(LatticePower, AgreesWithExact) {
  std::mt19937_64 gen(17);
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    const FiniteDist d = testing::random_dist(gen, 1 + i % 4, 12, 3);
    const long n = 1 + (i * 7) % 64;
    const FiniteDist exact = convolve_power_exact(d, n);
    const LatticeDist lat = convolve_power_lattice(d, n);
    std::vector<double> dense(lat.probs.size(), 0.0);
    for (const auto& a : exact.atoms()) {
      const Rational k = (a.value - lat.offset) / lat.step;
      ASSERT_TRUE(k.is_integer());
      dense[k.numerator().get_ui()] = a.prob.to_double();
    }
    for (std::size_t k = 0; k < dense.size(); ++k) worst = std::max(worst, std::abs(dense[k] - lat.probs[k]));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(LatticePower, MassConservedAtTenThousand) {
  const LatticeDist l = convolve_power_lattice(uniform3(), 10'000);
  EXPECT_EQ(l.probs.size(), 20'001u);
  EXPECT_NEAR(l.total_mass(), 1.0, 1e-9);
}

TEST(LatticeCdf, MatchesExactCdf) {
  const FiniteDist d = standardize(make_dist({{Rational(2), q(1, 4)}, {Rational(0), q(1, 4)}, {Rational(-1), q(1, 2)}}));
  const long n = 24;
  const FiniteDist exact = convolve_power_exact(d, n);
  const LatticeDist lat = convolve_power_lattice(d, n);
  for (int j = -40; j <= 40; ++j) {
    const double x = 0.1 * j;
    EXPECT_NEAR(cdf_scaled(lat, n, x), cdf_scaled(exact, n, x), 1e-13) << x;
  }
}

TEST(LatticeCdf, TieAtZeroIncluded) {
  // Standardized uniform{-1,0,1}: even after the irrational scaling the atom at 0
  // is an exact lattice point and must count in P(S_n <= 0).
  const FiniteDist s = standardize(uniform3());
  for (long n : {1L, 2L, 5L, 16L}) {
    const FiniteDist exact = convolve_power_exact(s, n);
    const LatticeDist lat = convolve_power_lattice(s, n);
    const double expected = (exact.cdf(Rational(0))).to_double();
    EXPECT_NEAR(cdf_scaled(lat, n, 0.0), expected, 1e-14) << n;
    EXPECT_DOUBLE_EQ(cdf_scaled(exact, n, 0.0), expected) << n;
  }
}

TEST(SumLaw, VariantDispatch) {
  const SumLaw e = convolve_power(uniform3(), 3, ConvolutionMode::Exact);
  const SumLaw l = convolve_power(uniform3(), 3, ConvolutionMode::LatticeFloat);
  EXPECT_TRUE(std::holds_alternative<FiniteDist>(e));
  EXPECT_TRUE(std::holds_alternative<LatticeDist>(l));
  EXPECT_NEAR(cdf_scaled(e, 3, 0.3), cdf_scaled(l, 3, 0.3), 1e-15);
}

}  // namespace
}  // namespace cltlab
