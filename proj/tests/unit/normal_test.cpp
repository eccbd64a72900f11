#include <cmath>

#include <gtest/gtest.h>

#include "cltlab/error.hpp"
#include "cltlab/normal.hpp"

namespace cltlab {
namespace {

TEST(Phi, Center) { EXPECT_DOUBLE_EQ(phi(0.0), 0.5); }

TEST(Phi, Symmetry) {
  for (double x : {0.5, 1.0, 2.0, 3.0}) EXPECT_NEAR(phi(x) + phi(-x), 1.0, 2e-12) << x;
  for (int i = 0; i <= 2000; ++i) {
    const double x = 0.005 * i;
    EXPECT_LE(std::abs(phi(x) + phi(-x) - 1.0), 2e-12) << x;
  }
}

TEST(Phi, ReferenceValues) {
  // 30-digit references from an arbitrary-precision library.
  struct Ref {
    double x;
    double value;
  };
  const Ref refs[] = {
      {1.0, 0.84134474606854294859}, {-2.0, 0.022750131948179207200}, {-8.0, 6.2209605742717841235e-16},
      {-5.0, 2.8665157187919391167e-7}, {-3.0, 0.0013498980316300945267}, {-2.5, 0.006209665325776135167},
      {3.0, 0.99865010196836990547}, {4.5, 0.99999660232687526994},
  };
  for (const auto& r : refs) {
    EXPECT_NEAR(phi(r.x), r.value, 1e-12) << r.x;
    EXPECT_NEAR(phi(r.x), r.value, 1e-13 * r.value) << "relative at " << r.x;
  }
}

TEST(Phi, ContinuousAcrossSplit) {
  const double below = std::nextafter(kPhiSplit, 0.0);
  EXPECT_NEAR(phi(below), phi(kPhiSplit), 1e-14);
  EXPECT_NEAR(phi(-below), phi(-kPhiSplit), 1e-14);
}

TEST(Phi, MonotoneAndSaturating) {
  double prev = 0.0;
  for (int i = -1000; i <= 1000; ++i) {
    const double v = phi(0.01 * i);
    EXPECT_GE(v, prev) << 0.01 * i;
    prev = v;
  }
  EXPECT_EQ(phi(-60.0), 0.0);
  EXPECT_EQ(phi(60.0), 1.0);
}

TEST(PhiOracle, Basics) {
  EXPECT_NEAR(phi_oracle(0.0, 1e-14), 0.5, 1e-14);
  EXPECT_LE(phi_oracle(-12.0, 1e-14), 1e-32);
  EXPECT_NEAR(phi_oracle(1.0, 1e-14), 0.84134474606854294859, 1e-13);
  EXPECT_THROW((void)phi_oracle(0.0, 1e-16), Error);
}

TEST(PhiOracle, AgreesWithPhiOnGrid) {
  for (int i = -60; i <= 60; ++i) {
    const double x = 0.1 * i;
    EXPECT_LE(std::abs(phi(x) - phi_oracle(x, 1e-14)), 1e-12) << x;
  }
}

}  // namespace
}  // namespace cltlab
