#include "cltlab/lattice.hpp"

#include <cmath>
#include <string>

#include "cltlab/error.hpp"

namespace cltlab {

namespace {

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Largest lattice index k whose point offset_n + k*step lies at or below the
// outward-rounded threshold, or -1 if none. Done in index space so that exact
// lattice ties (e.g. the atom at 0 when x = 0) survive.
long last_included_index(const LatticeDist& d, long n, double x) {
  if (std::isnan(x)) throw Error(ErrorKind::InvalidArgument, "cdf_scaled at NaN");
  const long last = static_cast<long>(d.probs.size()) - 1;
  if (x == -HUGE_VAL) return -1;
  if (x == HUGE_VAL) return last;
  const double t = std::nextafter(x * std::sqrt(static_cast<double>(n)), HUGE_VAL);
  if (!std::isfinite(t)) return t > 0 ? last : -1;
  // The lattice law of the n-fold sum already carries offset n*offset_1;
  // d.offset is the sum's offset, so n enters only through t.
  const double r = t / d.step.to_double() - (d.offset / d.step).to_double();
  if (r < 0) return -1;
  if (r >= static_cast<double>(last)) return last;
  return static_cast<long>(std::floor(r));
}

void check_n(long n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1, got " + std::to_string(n));
}

}  // namespace

double LatticeDist::total_mass() const {
  Neumaier acc;
  for (double p : probs) acc.add(p);
  return acc.value();
}

LatticeDist to_lattice(const FiniteDist& d, std::size_t max_length) {
  LatticeDist out;
  out.offset = d.min_value();
  Rational step;
  for (const auto& a : d.atoms()) step = gcd(step, a.value - out.offset);
  if (step.is_zero()) step = Rational(1);
  out.step = step;
  const Rational span = (d.max_value() - out.offset) / step;
  if (span > Rational(static_cast<long>(max_length - 1))) {
    throw Error(ErrorKind::LatticeBudgetExceeded,
                "common lattice needs " + span.str() + "+1 points, above the budget of " +
                    std::to_string(max_length));
  }
  out.probs.assign(static_cast<std::size_t>(span.numerator().get_ui()) + 1, 0.0);
  for (const auto& a : d.atoms()) {
    const Rational k = (a.value - out.offset) / step;
    out.probs[k.numerator().get_ui()] = a.prob.to_double();
  }
  return out;
}

LatticeDist convolve(const LatticeDist& a, const LatticeDist& b) {
  if (a.step != b.step) throw Error(ErrorKind::InvalidArgument, "lattice steps differ");
  LatticeDist out;
  out.offset = a.offset + b.offset;
  out.step = a.step;
  const std::size_t la = a.probs.size();
  const std::size_t lb = b.probs.size();
  out.probs.assign(la + lb - 1, 0.0);
  // Index the shorter operand in the inner loop.
  const auto& lng = la >= lb ? a.probs : b.probs;
  const auto& sht = la >= lb ? b.probs : a.probs;
  const std::size_t ll = lng.size();
  const std::size_t ls = sht.size();
  for (std::size_t k = 0; k < out.probs.size(); ++k) {
    Neumaier acc;
    const std::size_t j_lo = k >= ll ? k - ll + 1 : 0;
    const std::size_t j_hi = std::min(k, ls - 1);
    for (std::size_t j = j_lo; j <= j_hi; ++j) acc.add(sht[j] * lng[k - j]);
    out.probs[k] = acc.value();
  }
  return out;
}

LatticeDist convolve_power_lattice(const FiniteDist& d, long n, std::size_t max_length) {
  check_n(n);
  const LatticeDist base = to_lattice(d, max_length);
  const double projected =
      static_cast<double>(n) * static_cast<double>(base.probs.size() - 1) + 1.0;
  if (projected > static_cast<double>(max_length)) {
    throw Error(ErrorKind::LatticeBudgetExceeded,
                "n=" + std::to_string(n) + " needs " + std::to_string(static_cast<long long>(projected)) +
                    " lattice points, above the budget of " + std::to_string(max_length));
  }
  LatticeDist acc = base;
  for (long i = 1; i < n; ++i) acc = convolve(acc, base);
  return acc;
}

double cdf_scaled(const LatticeDist& sum_law, long n, double x) {
  check_n(n);
  const long last = last_included_index(sum_law, n, x);
  if (last < 0) return 0.0;
  Neumaier acc;
  for (long k = 0; k <= last; ++k) acc.add(sum_law.probs[static_cast<std::size_t>(k)]);
  return acc.value();
}

std::vector<double> cdf_scaled(const LatticeDist& sum_law, long n, std::span<const double> xs) {
  check_n(n);
  std::vector<double> cum(sum_law.probs.size());
  Neumaier acc;
  for (std::size_t k = 0; k < cum.size(); ++k) {
    acc.add(sum_law.probs[k]);
    cum[k] = acc.value();
  }
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    const long last = last_included_index(sum_law, n, x);
    out.push_back(last < 0 ? 0.0 : cum[static_cast<std::size_t>(last)]);
  }
  return out;
}

SumLaw convolve_power(const FiniteDist& d, long n, ConvolutionMode mode, std::size_t exact_budget) {
  if (mode == ConvolutionMode::Exact) return convolve_power_exact(d, n, exact_budget);
  return convolve_power_lattice(d, n);
}

double cdf_scaled(const SumLaw& sum_law, long n, double x) {
  return std::visit([&](const auto& law) { return cdf_scaled(law, n, x); }, sum_law);
}

std::vector<double> cdf_scaled(const SumLaw& sum_law, long n, std::span<const double> xs) {
  return std::visit([&](const auto& law) { return cdf_scaled(law, n, xs); }, sum_law);
}

}  // namespace cltlab
