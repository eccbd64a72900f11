#include "cltlab/finite_dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cltlab/error.hpp"

namespace cltlab {

namespace {

bool by_value(const Atom& a, const Atom& b) { return a.value < b.value; }

std::string describe(const Atom& a) { return "(" + a.value.str() + ", " + a.prob.str() + ")"; }

// Sorted-by-value prefix sums rounded once at the end of each prefix.
std::vector<double> cumulative_doubles(const FiniteDist& d) {
  std::vector<double> out;
  out.reserve(d.size());
  Rational acc;
  for (const auto& a : d.atoms()) {
    acc += a.prob;
    out.push_back(acc.to_double());
  }
  return out;
}

// Index one past the last atom whose value is <= the outward-rounded threshold.
std::size_t included_count(const FiniteDist& d, long n, double x) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1, got " + std::to_string(n));
  if (std::isnan(x)) throw Error(ErrorKind::InvalidArgument, "cdf_scaled at NaN");
  if (x == -HUGE_VAL) return 0;
  if (x == HUGE_VAL) return d.size();
  const double t = std::nextafter(x * std::sqrt(static_cast<double>(n)), HUGE_VAL);
  if (!std::isfinite(t)) return t > 0 ? d.size() : 0;
  const Rational threshold = Rational::from_double(t);
  const auto it = std::upper_bound(d.atoms().begin(), d.atoms().end(), threshold,
                                   [](const Rational& v, const Atom& a) { return v < a.value; });
  return static_cast<std::size_t>(it - d.atoms().begin());
}

}  // namespace

FiniteDist FiniteDist::make(std::vector<Atom> atoms) {
  if (atoms.empty()) throw Error(ErrorKind::SumNotOne, "no atoms given (total mass 0)");
  for (const auto& a : atoms) {
    if (a.prob.sign() <= 0) {
      throw Error(ErrorKind::NonPositiveProb, "atom " + describe(a) + " has nonpositive probability");
    }
  }
  std::stable_sort(atoms.begin(), atoms.end(), by_value);
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (atoms[i].value == atoms[i - 1].value) {
      throw Error(ErrorKind::DuplicateValue, "value " + atoms[i].value.str() + " appears more than once");
    }
  }
  Rational total;
  for (const auto& a : atoms) total += a.prob;
  if (total != Rational(1)) {
    throw Error(ErrorKind::SumNotOne, "probabilities sum to " + total.str() + ", last atom " +
                                          describe(atoms.back()));
  }
  return FiniteDist(std::move(atoms));
}

FiniteDist FiniteDist::merge(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(), by_value);
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (auto& a : atoms) {
    if (!out.empty() && out.back().value == a.value) {
      out.back().prob += a.prob;
    } else {
      out.push_back(std::move(a));
    }
  }
  std::erase_if(out, [](const Atom& a) { return a.prob.is_zero(); });
  return FiniteDist(std::move(out));
}

Rational FiniteDist::prob_at(const Rational& v) const {
  const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), v,
                                   [](const Atom& a, const Rational& x) { return a.value < x; });
  if (it != atoms_.end() && it->value == v) return it->prob;
  return Rational(0);
}

Rational FiniteDist::cdf(const Rational& v) const {
  Rational acc;
  for (const auto& a : atoms_) {
    if (a.value > v) break;
    acc += a.prob;
  }
  return acc;
}

FiniteDist point_mass(const Rational& v) { return FiniteDist::make({{v, Rational(1)}}); }

FiniteDist bernoulli(const Rational& p) {
  if (p.sign() <= 0 || p >= Rational(1)) {
    throw Error(ErrorKind::InvalidArgument, "Bernoulli parameter must lie in (0,1), got " + p.str());
  }
  return FiniteDist::make({{Rational(0), Rational(1) - p}, {Rational(1), p}});
}

FiniteDist rademacher() {
  return FiniteDist::make({{Rational(-1), Rational(1, 2)}, {Rational(1), Rational(1, 2)}});
}

Rational mean(const FiniteDist& d) {
  Rational acc;
  for (const auto& a : d.atoms()) acc += a.value * a.prob;
  return acc;
}

Rational second_moment(const FiniteDist& d) {
  Rational acc;
  for (const auto& a : d.atoms()) acc += a.value * a.value * a.prob;
  return acc;
}

Rational variance(const FiniteDist& d) {
  const Rational mu = mean(d);
  return second_moment(d) - mu * mu;
}

FiniteDist standardize(const FiniteDist& d, unsigned digits) {
  const Rational var = variance(d);
  if (var.is_zero()) throw Error(ErrorKind::ZeroVariance, "cannot standardize a constant distribution");
  const Rational mu = mean(d);
  const Rational inv_sigma = sqrt_approx(var, digits).reciprocal();
  std::vector<Atom> atoms;
  atoms.reserve(d.size());
  for (const auto& a : d.atoms()) atoms.push_back({(a.value - mu) * inv_sigma, a.prob});
  return FiniteDist::make(std::move(atoms));
}

FiniteDist convolve(const FiniteDist& a, const FiniteDist& b) {
  std::vector<Atom> pairs;
  pairs.reserve(a.size() * b.size());
  for (const auto& x : a.atoms()) {
    for (const auto& y : b.atoms()) pairs.push_back({x.value + y.value, x.prob * y.prob});
  }
  return FiniteDist::merge(std::move(pairs));
}

double projected_atom_count(const FiniteDist& d, long n) {
  const auto k = static_cast<double>(d.size());
  const auto nn = static_cast<double>(n);
  // C(n+k-1, k-1) in log space; saturates harmlessly to +inf.
  const double log_multisets = std::lgamma(nn + k) - std::lgamma(nn + 1) - std::lgamma(k);
  const double multisets = std::exp(log_multisets);
  if (d.size() == 1) return 1.0;
  Rational step;
  for (const auto& a : d.atoms()) step = gcd(step, a.value - d.min_value());
  const double span_points = ((d.max_value() - d.min_value()) / step).to_double();
  return std::min(std::round(multisets), nn * span_points + 1.0);
}

FiniteDist convolve_power_exact(const FiniteDist& d, long n, std::size_t budget) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1, got " + std::to_string(n));
  const double projected = projected_atom_count(d, n);
  if (projected > static_cast<double>(budget)) {
    throw Error(ErrorKind::ExactBudgetExceeded,
                "n=" + std::to_string(n) + " projects " + std::to_string(static_cast<long long>(projected)) +
                    " atoms, above the exact budget of " + std::to_string(budget) +
                    "; use lattice-float mode");
  }
  FiniteDist acc = d;
  for (long i = 1; i < n; ++i) acc = convolve(acc, d);
  return acc;
}

double cdf_scaled(const FiniteDist& sum_law, long n, double x) {
  const std::size_t count = included_count(sum_law, n, x);
  if (count == 0) return 0.0;
  if (count == sum_law.size()) return 1.0;
  Rational acc;
  for (std::size_t i = 0; i < count; ++i) acc += sum_law.atoms()[i].prob;
  return acc.to_double();
}

std::vector<double> cdf_scaled(const FiniteDist& sum_law, long n, std::span<const double> xs) {
  const std::vector<double> cum = cumulative_doubles(sum_law);
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    const std::size_t count = included_count(sum_law, n, x);
    out.push_back(count == 0 ? 0.0 : (count == sum_law.size() ? 1.0 : cum[count - 1]));
  }
  return out;
}

}  // namespace cltlab
