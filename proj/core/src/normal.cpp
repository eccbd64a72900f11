#include "cltlab/normal.hpp"

#include <cmath>
#include <numbers>

#include "cltlab/error.hpp"

namespace cltlab {

namespace {

constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;  // 1/sqrt(2*pi)

// erf(z) for 0 <= z < ~2.2 by the positive-term series.
double erf_series(double z) {
  const double two_z2 = 2.0 * z * z;
  double term = z;
  double sum = z;
  for (int n = 1; n < 500; ++n) {
    term *= two_z2 / (2.0 * n + 1.0);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return 2.0 * std::numbers::inv_sqrtpi * std::exp(-z * z) * sum;
}

// erfc(z) for z >= ~2 by the continued fraction
//   erfc(z) = exp(-z^2)/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))).
double erfc_continued_fraction(double z) {
  constexpr double tiny = 1e-300;
  double f = z;
  double c = f;
  double d = 0.0;
  for (int n = 1; n < 5000; ++n) {
    const double a = 0.5 * n;
    d = z + a * d;
    if (d == 0.0) d = tiny;
    c = z + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-z * z) * std::numbers::inv_sqrtpi / f;
}

// P(Z <= -|x|).
double lower_tail(double ax) {
  const double z = ax / std::numbers::sqrt2;
  if (ax < kPhiSplit) return 0.5 - 0.5 * erf_series(z);
  return 0.5 * erfc_continued_fraction(z);
}

struct SimpsonBudget {
  long evaluations = 0;
  long max_evaluations = 20'000'000;
};

double adaptive_simpson(double a, double b, double fa, double fm, double fb, double whole, double tol,
                        int depth, SimpsonBudget& budget) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = normal_pdf(lm);
  const double frm = normal_pdf(rm);
  budget.evaluations += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0 || budget.evaluations > budget.max_evaluations) {
    throw Error(ErrorKind::NonConvergence, "adaptive Simpson refinement budget exhausted");
  }
  return adaptive_simpson(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, budget) +
         adaptive_simpson(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, budget);
}

}  // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double phi(double x) {
  if (std::isnan(x)) return x;
  if (x < 0) return lower_tail(-x);
  return 1.0 - lower_tail(x);
}

double phi_oracle(double x, double tol) {
  if (!(tol >= 1e-15)) throw Error(ErrorKind::InvalidArgument, "phi_oracle tolerance must be >= 1e-15");
  if (x <= kPhiOracleLower) return 0.0;
  const double a = kPhiOracleLower;
  const double b = x;
  SimpsonBudget budget;
  // Seed with a uniform split so the peak is never straddled by a single coarse panel.
  constexpr int kPanels = 64;
  const double h = (b - a) / kPanels;
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double lo = a + i * h;
    const double hi = (i + 1 == kPanels) ? b : lo + h;
    const double flo = normal_pdf(lo);
    const double fhi = normal_pdf(hi);
    const double fmid = normal_pdf(0.5 * (lo + hi));
    const double s = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    total += adaptive_simpson(lo, hi, flo, fmid, fhi, s, tol / kPanels, 50, budget);
  }
  return total;
}

}  // namespace cltlab
