#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "cltlab/error.hpp"
#include "cltlab/finite_dist.hpp"
#include "oracles.hpp"

namespace cltlab {
namespace {

Rational q(long n, long d) { return Rational(BigInt(n), BigInt(d)); }

FiniteDist uniform3() { return make_dist({{Rational(1), q(1, 3)}, {Rational(0), q(1, 3)}, {Rational(-1), q(1, 3)}}); }

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

TEST(MakeDist, SortsAtoms) {
  const FiniteDist u = uniform3();
  ASSERT_EQ(u.size(), 3u);
  EXPECT_EQ(u.atoms()[0].value, Rational(-1));
  EXPECT_EQ(u.atoms()[2].value, Rational(1));
  EXPECT_EQ(rademacher(), make_dist({{Rational(1), q(1, 2)}, {Rational(-1), q(1, 2)}}));
}

TEST(MakeDist, Errors) {
  EXPECT_EQ(kind_of([] { (void)make_dist({{Rational(1), q(1, 2)}, {Rational(1), q(1, 2)}}); }),
            ErrorKind::DuplicateValue);
  EXPECT_EQ(kind_of([] { (void)make_dist({{Rational(1), q(1, 2)}, {Rational(2), q(1, 3)}}); }),
            ErrorKind::SumNotOne);
  EXPECT_EQ(kind_of([] { (void)make_dist({{Rational(1), Rational(0)}, {Rational(2), Rational(1)}}); }),
            ErrorKind::NonPositiveProb);
  EXPECT_EQ(kind_of([] { (void)make_dist({{Rational(1), q(-1, 2)}, {Rational(2), q(3, 2)}}); }),
            ErrorKind::NonPositiveProb);
}

TEST(MakeDist, ErrorNamesAtom) {
  try {
    (void)make_dist({{Rational(5), q(1, 2)}, {Rational(5), q(1, 2)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("5"), std::string::npos);
  }
}

TEST(Moments, Examples) {
  EXPECT_EQ(mean(rademacher()), Rational(0));
  EXPECT_EQ(variance(rademacher()), Rational(1));
  EXPECT_EQ(mean(uniform3()), Rational(0));
  EXPECT_EQ(variance(uniform3()), q(2, 3));
  const FiniteDist b = bernoulli(q(3, 10));
  EXPECT_EQ(mean(b), q(3, 10));
  EXPECT_EQ(variance(b), q(21, 100));
}

TEST(Standardize, Examples) {
  EXPECT_EQ(standardize(rademacher()), rademacher());
  EXPECT_EQ(standardize(bernoulli(q(1, 2))), rademacher());
  EXPECT_EQ(kind_of([] { (void)standardize(point_mass(Rational(3))); }), ErrorKind::ZeroVariance);
}

TEST(Standardize, ResidualBelowTolerance) {
  const Rational tol = Rational(BigInt(1), BigInt("1" + std::string(40, '0')));
  std::mt19937_64 gen(11);
  for (int i = 0; i < 50; ++i) {
    const FiniteDist s = standardize(testing::random_dist(gen, 2 + i % 5));
    EXPECT_TRUE(mean(s).is_zero());
    EXPECT_LT((variance(s) - Rational(1)).abs(), tol);
  }
}

TEST(Convolve, Examples) {
  EXPECT_EQ(convolve(rademacher(), rademacher()),
            make_dist({{Rational(-2), q(1, 4)}, {Rational(0), q(1, 2)}, {Rational(2), q(1, 4)}}));
  EXPECT_EQ(convolve(uniform3(), point_mass(Rational(0))), uniform3());
  // Frozen from enumerating the 9 pairs.
  EXPECT_EQ(convolve(uniform3(), uniform3()),
            make_dist({{Rational(-2), q(1, 9)}, {Rational(-1), q(2, 9)}, {Rational(0), q(3, 9)},
                       {Rational(1), q(2, 9)}, {Rational(2), q(1, 9)}}));
}

TEST(Convolve, MatchesPairEnumeration) {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 100; ++i) {
    const FiniteDist a = testing::random_dist(gen, 1 + i % 4);
    const FiniteDist b = testing::random_dist(gen, 1 + (i / 4) % 4);
    EXPECT_EQ(testing::as_map(convolve(a, b)), testing::enumerate_sum(a, b));
  }
}

TEST(Convolve, AlgebraicProperties) {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 100; ++i) {
    const FiniteDist a = testing::random_dist(gen, 1 + i % 4);
    const FiniteDist b = testing::random_dist(gen, 1 + (i + 1) % 4);
    const FiniteDist c = testing::random_dist(gen, 1 + (i + 2) % 4);
    EXPECT_EQ(convolve(a, b), convolve(b, a));
    EXPECT_EQ(convolve(convolve(a, b), c), convolve(a, convolve(b, c)));
    const FiniteDist ab = convolve(a, b);
    EXPECT_EQ(mean(ab), mean(a) + mean(b));
    EXPECT_EQ(variance(ab), variance(a) + variance(b));
    EXPECT_LE(ab.size(), a.size() * b.size());
  }
}

TEST(ConvolvePower, EqualsRepeatedConvolve) {
  EXPECT_EQ(convolve_power_exact(rademacher(), 2), convolve(rademacher(), rademacher()));
  std::mt19937_64 gen(7);
  for (int i = 0; i < 40; ++i) {
    const FiniteDist d = testing::random_dist(gen, 1 + i % 4);
    const long n = 1 + i % 8;
    FiniteDist acc = d;
    for (long k = 1; k < n; ++k) acc = convolve(acc, d);
    EXPECT_EQ(convolve_power_exact(d, n), acc);
  }
}

TEST(ConvolvePower, BernoulliMatchesBinomialPmf) {
  const Rational p = q(3, 10);
  const long n = 25;
  const FiniteDist law = convolve_power_exact(bernoulli(p), n);
  ASSERT_EQ(law.size(), static_cast<std::size_t>(n + 1));
  for (long k = 0; k <= n; ++k) {
    EXPECT_EQ(law.prob_at(Rational(k)), testing::binomial_pmf_closed_form(n, k, p)) << k;
  }
}

TEST(ConvolvePower, BudgetRefusal) {
  try {
    (void)convolve_power_exact(uniform3(), 5000, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ExactBudgetExceeded);
    EXPECT_TRUE(e.is_budget());
    EXPECT_NE(std::string(e.what()).find("lattice"), std::string::npos);
  }
  EXPECT_NO_THROW((void)convolve_power_exact(uniform3(), 10, 1000));
  EXPECT_THROW((void)convolve_power_exact(uniform3(), 0), Error);
}

TEST(ProjectedAtomCount, TightOnLattices) {
  EXPECT_DOUBLE_EQ(projected_atom_count(uniform3(), 10), 21.0);
  EXPECT_DOUBLE_EQ(projected_atom_count(rademacher(), 10), 11.0);
  // Incommensurable values: multisets bound, C(3+2, 2) = 10.
  const FiniteDist d = make_dist({{Rational(0), q(1, 3)}, {Rational(1), q(1, 3)},
                                  {Rational(BigInt(1), BigInt(1000003)), q(1, 3)}});
  EXPECT_LE(projected_atom_count(d, 3), 10.0);
  EXPECT_GE(static_cast<double>(convolve_power_exact(d, 3).size()), 1.0);
}

TEST(CdfScaled, Examples) {
  EXPECT_DOUBLE_EQ(cdf_scaled(rademacher(), 1, 0.0), 0.5);
  EXPECT_DOUBLE_EQ(cdf_scaled(uniform3(), 7, std::numeric_limits<double>::infinity()), 1.0);
  EXPECT_DOUBLE_EQ(cdf_scaled(uniform3(), 7, -std::numeric_limits<double>::infinity()), 0.0);
  // Four centered Bernoulli(1/2) draws: P(Sum <= 0) = P(Bin(4,1/2) <= 2) = 11/16.
  const FiniteDist centered = make_dist({{q(-1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}});
  EXPECT_DOUBLE_EQ(cdf_scaled(convolve_power_exact(centered, 4), 4, 0.0), 11.0 / 16.0);
}

TEST(CdfScaled, BoundaryAtomIncluded) {
  // Sum of 4 Rademacher: atom 2 sits exactly at x*sqrt(4) for x = 1.
  const FiniteDist law = convolve_power_exact(rademacher(), 4);
  EXPECT_DOUBLE_EQ(cdf_scaled(law, 4, 1.0), 15.0 / 16.0);
  // One ulp of slack above x*sqrt(n) still catches the atom; a visible gap does not.
  EXPECT_DOUBLE_EQ(cdf_scaled(law, 4, std::nextafter(1.0, 0.0)), 15.0 / 16.0);
  EXPECT_DOUBLE_EQ(cdf_scaled(law, 4, 1.0 - 1e-9), 11.0 / 16.0);
}

TEST(CdfScaled, MonotoneWithLimits) {
  std::mt19937_64 gen(9);
  for (int i = 0; i < 20; ++i) {
    const FiniteDist d = convolve_power_exact(testing::random_dist(gen, 2 + i % 3), 1 + i % 6);
    const long n = 1 + i % 6;
    std::vector<double> xs;
    for (int j = -200; j <= 200; ++j) xs.push_back(0.1 * j);
    const std::vector<double> c = cdf_scaled(d, n, xs);
    for (std::size_t j = 1; j < c.size(); ++j) EXPECT_LE(c[j - 1], c[j]);
    EXPECT_DOUBLE_EQ(cdf_scaled(d, n, -1e300), 0.0);
    EXPECT_DOUBLE_EQ(cdf_scaled(d, n, 1e300), 1.0);
    for (std::size_t j = 0; j < xs.size(); j += 37) EXPECT_DOUBLE_EQ(c[j], cdf_scaled(d, n, xs[j]));
  }
}

}  // namespace
}  // namespace cltlab
