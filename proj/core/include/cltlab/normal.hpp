#pragma once

namespace cltlab {

/// Standard normal density.
double normal_pdf(double x);

/// Standard normal CDF with absolute error below 1e-12.
///
/// For |x| < 3 this sums the all-positive series
///   erf(z) = 2/sqrt(pi) * exp(-z^2) * sum_n 2^n z^(2n+1) / (1*3*...*(2n+1)),  z = |x|/sqrt(2),
/// which has no cancellation. For |x| >= 3 the upper tail comes from the
/// continued fraction of erfc evaluated with the modified Lentz method.
/// Negative arguments are always evaluated as a lower tail and positive ones
/// as one minus that tail, so phi(x) + phi(-x) == 1 up to rounding.
double phi(double x);

/// Reference value of the standard normal CDF by adaptive Simpson quadrature of
/// the density over [-12, x] (the neglected tail below -12 is < 1.8e-33).
/// Independent of phi(); meant for cross-checks. Throws NonConvergence if the
/// refinement budget runs out, InvalidArgument if tol < 1e-15.
double phi_oracle(double x, double tol = 1e-14);

inline constexpr double kPhiSplit = 3.0;
inline constexpr double kPhiOracleLower = -12.0;

}  // namespace cltlab
