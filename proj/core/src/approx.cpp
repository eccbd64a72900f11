#include "cltlab/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "cltlab/error.hpp"
#include "cltlab/lattice.hpp"
#include "cltlab/normal.hpp"
#include "cltlab/rng.hpp"

namespace cltlab {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

// Antiderivatives of the standard pieces of the inverse CDFs: -log(1-u) for the
// exponential, and log(2u) / -log(2(1-u)) (continuous at 1/2) for the Laplace.
double exp_antiderivative(double u) {
  const double v = 1.0 - u;
  return v > 0 ? v * std::log1p(-u) - v : 0.0;
}

double laplace_antiderivative(double u) {
  if (u < 0.5) return u > 0 ? u * std::log(2.0 * u) - u : 0.0;
  const double v = 1.0 - u;
  return v > 0 ? v * std::log(2.0 * v) - v : 0.0;
}

// Interior cells see a smooth integrand, so a shallow Gauss-Kronrod refinement is
// enough (deeper refinement on a narrow cell only chases rounding noise in
// (x - y)^2). End cells can carry a log singularity and go to tanh-sinh.
double cell_sq_error(const ContinuousSource& src, double u0, double u1, double y) {
  auto f = [&](double u) {
    const double d = src.std_inv_cdf(std::clamp(u, 0x1.0p-60, 1.0 - 0x1.0p-53)) - y;
    return d * d;
  };
  if (u0 == 0.0 || u1 == 1.0) {
    thread_local boost::math::quadrature::tanh_sinh<double> end_rule;
    return end_rule.integrate(f, u0, u1, 1e-10);
  }
  return Kronrod::integrate(f, u0, u1, 4, 1e-12);
}

double cell_lo(std::size_t j, std::size_t k) { return static_cast<double>(j) / static_cast<double>(k); }

// Exact rational values for the conditional means. When the distinct means lie
// on an arithmetic progression they are snapped onto an exact one, so that the
// simple law sits on a lattice with as many points as distinct means.
std::vector<Rational> snap_means(const std::vector<double>& means) {
  std::vector<double> distinct = means;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  bool progression = distinct.size() >= 2;
  double step = 0.0;
  if (progression) {
    step = (distinct.back() - distinct.front()) / static_cast<double>(distinct.size() - 1);
    const double scale = std::max(1.0, std::max(std::abs(distinct.front()), std::abs(distinct.back())));
    for (std::size_t i = 0; i < distinct.size() && progression; ++i) {
      const double expected = distinct.front() + static_cast<double>(i) * step;
      progression = std::abs(distinct[i] - expected) <= 1e-12 * scale;
    }
  }

  std::vector<Rational> snapped(means.size());
  const Rational first = Rational::from_double(distinct.front());
  const Rational exact_step = progression ? Rational::from_double(step) : Rational(0);
  for (std::size_t j = 0; j < means.size(); ++j) {
    if (progression) {
      const auto i = static_cast<long>(std::lower_bound(distinct.begin(), distinct.end(), means[j]) -
                                       distinct.begin());
      snapped[j] = first + exact_step * Rational(i);
    } else {
      snapped[j] = Rational::from_double(means[j]);
    }
  }
  return snapped;
}

}  // namespace

ContinuousSource::ContinuousSource(SourceFamily f, double p0, double p1) : family_(f), p0_(p0), p1_(p1) {
  switch (family_) {
    case SourceFamily::Uniform:
      mean_ = 0.5 * (p0_ + p1_);
      sd_ = (p1_ - p0_) / std::sqrt(12.0);
      break;
    case SourceFamily::ExponentialCentered:
      mean_ = 0.0;  // already centered: X = E - 1/rate
      sd_ = 1.0 / p0_;
      break;
    case SourceFamily::Laplace:
      mean_ = p0_;
      sd_ = std::numbers::sqrt2 * p1_;
      break;
    case SourceFamily::TwoPointNoise:
      mean_ = 0.0;
      sd_ = std::sqrt(1.0 + p0_ * p0_ / 3.0);
      break;
  }
}

ContinuousSource ContinuousSource::uniform(double lo, double hi) {
  if (!(hi > lo)) throw Error(ErrorKind::InvalidArgument, "uniform source needs lo < hi");
  return ContinuousSource(SourceFamily::Uniform, lo, hi);
}

ContinuousSource ContinuousSource::exponential_centered(double rate) {
  if (!(rate > 0)) throw Error(ErrorKind::InvalidArgument, "exponential rate must be > 0");
  return ContinuousSource(SourceFamily::ExponentialCentered, rate, 0.0);
}

ContinuousSource ContinuousSource::laplace(double location, double scale) {
  if (!(scale > 0)) throw Error(ErrorKind::InvalidArgument, "laplace scale must be > 0");
  return ContinuousSource(SourceFamily::Laplace, location, scale);
}

ContinuousSource ContinuousSource::two_point_noise(double half_width) {
  if (!(half_width >= 0 && half_width < 1)) {
    throw Error(ErrorKind::InvalidArgument, "two-point noise half-width must lie in [0, 1)");
  }
  return ContinuousSource(SourceFamily::TwoPointNoise, half_width, 0.0);
}

ContinuousSource ContinuousSource::from_name(std::string_view family, double noise) {
  if (family == "uniform") return uniform(-std::sqrt(3.0), std::sqrt(3.0));
  if (family == "exp" || family == "exponential-centered") return exponential_centered(1.0);
  if (family == "laplace") return laplace(0.0, 1.0 / std::numbers::sqrt2);
  if (family == "two-point" || family == "two-point-plus-noise") return two_point_noise(noise);
  throw Error(ErrorKind::InvalidArgument, "unknown family '" + std::string(family) +
                                              "' (expected uniform|exp|laplace|two-point)");
}

std::string ContinuousSource::name() const {
  switch (family_) {
    case SourceFamily::Uniform: return "uniform";
    case SourceFamily::ExponentialCentered: return "exp";
    case SourceFamily::Laplace: return "laplace";
    case SourceFamily::TwoPointNoise: return "two-point";
  }
  return "unknown";
}

double ContinuousSource::inv_cdf(double u) const {
  switch (family_) {
    case SourceFamily::Uniform:
      return p0_ + (p1_ - p0_) * u;
    case SourceFamily::ExponentialCentered:
      return -std::log1p(-u) / p0_ - 1.0 / p0_;
    case SourceFamily::Laplace:
      return u < 0.5 ? p0_ + p1_ * std::log(2.0 * u) : p0_ - p1_ * std::log(2.0 * (1.0 - u));
    case SourceFamily::TwoPointNoise:
      return u < 0.5 ? -1.0 - p0_ + 4.0 * p0_ * u : 1.0 - p0_ + 4.0 * p0_ * (u - 0.5);
  }
  return 0.0;
}

double ContinuousSource::raw_integral(double u0, double u1) const {
  switch (family_) {
    case SourceFamily::Uniform:
      return (u1 - u0) * inv_cdf(0.5 * (u0 + u1));
    case SourceFamily::ExponentialCentered:
      return (exp_antiderivative(u1) - exp_antiderivative(u0)) / p0_ - (u1 - u0) / p0_;
    case SourceFamily::Laplace:
      return p0_ * (u1 - u0) + p1_ * (laplace_antiderivative(u1) - laplace_antiderivative(u0));
    case SourceFamily::TwoPointNoise: {
      // Linear on each half; integrate each piece by its midpoint.
      auto piece = [this](double a, double b) { return b > a ? (b - a) * inv_cdf(0.5 * (a + b)) : 0.0; };
      if (u1 <= 0.5 || u0 >= 0.5) return piece(u0, u1);
      return piece(u0, 0.5) + piece(0.5, u1);
    }
  }
  return 0.0;
}

double ContinuousSource::std_integral(double u0, double u1) const {
  return (raw_integral(u0, u1) - mean_ * (u1 - u0)) / sd_;
}

double quantization_error(const ContinuousSource& src, const std::vector<double>& cell_values) {
  const std::size_t k = cell_values.size();
  double total = 0.0;
  for (std::size_t j = 0; j < k; ++j) total += cell_sq_error(src, cell_lo(j, k), cell_lo(j + 1, k), cell_values[j]);
  return total;
}

double uniform_cell_error_closed_form(std::size_t cells) {
  const double width = 2.0 * std::sqrt(3.0) / static_cast<double>(cells);
  return width * width / 12.0;
}

QuantizerResult quantize(const ContinuousSource& src, double eta, std::size_t max_cells) {
  if (!(eta > 0)) throw Error(ErrorKind::InvalidArgument, "eta must be > 0");
  QuantizerResult res;
  res.eta_requested = eta;
  for (std::size_t k = 1;; k *= 2) {
    if (k > max_cells) {
      throw Error(ErrorKind::EtaTooSmallForBudget,
                  "eta=" + std::to_string(eta) + " needs more than " + std::to_string(max_cells) + " cells");
    }
    std::vector<double> means(k);
    for (std::size_t j = 0; j < k; ++j) {
      const double u0 = cell_lo(j, k);
      const double u1 = cell_lo(j + 1, k);
      means[j] = src.std_integral(u0, u1) / (u1 - u0);
    }
    const double raw = quantization_error(src, means);
    res.schedule.emplace_back(k, raw);
    if (raw > 0.5 * eta) continue;

    const std::vector<Rational> snapped = snap_means(means);
    std::vector<Atom> atoms;
    atoms.reserve(k);
    const Rational cell_prob(BigInt(1), BigInt(static_cast<unsigned long>(k)));
    for (const auto& v : snapped) atoms.push_back({v, cell_prob});
    const FiniteDist merged = FiniteDist::merge(std::move(atoms));
    if (variance(merged).is_zero()) continue;

    // Same affine map standardize() applies, recorded per cell.
    const Rational mu = mean(merged);
    const Rational inv_sigma = sqrt_approx(variance(merged)).reciprocal();
    std::vector<double> corrected(k);
    for (std::size_t j = 0; j < k; ++j) corrected[j] = ((snapped[j] - mu) * inv_sigma).to_double();
    const double achieved = quantization_error(src, corrected);
    if (achieved > eta) continue;

    res.simple = standardize(merged);
    res.eta_achieved = achieved;
    res.cells = k;
    res.cell_values = std::move(corrected);
    res.boundaries.clear();
    for (std::size_t j = 1; j < k; ++j) res.boundaries.push_back(src.std_inv_cdf(cell_lo(j, k)));
    return res;
  }
}

CoupledPair coupled_pair(const ContinuousSource& src, const QuantizerResult& q, double u) {
  const double x = src.std_inv_cdf(u);
  const auto cell = static_cast<std::size_t>(std::upper_bound(q.boundaries.begin(), q.boundaries.end(), x) -
                                             q.boundaries.begin());
  return {x, q.cell_values[cell]};
}

CoupledPair coupled_sample(const ContinuousSource& src, const QuantizerResult& q, SeededRng& rng) {
  return coupled_pair(src, q, rng.uniform_open01());
}

void ChebyshevCheckConfig::validate() const {
  if (!(delta > 0)) throw Error(ErrorKind::InvalidArgument, "delta must be > 0");
  if (!(epsilon > 0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be > 0");
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be >= 1");
}

ChebyshevReport chebyshev_check(const ContinuousSource& src, const ChebyshevCheckConfig& cfg) {
  cfg.validate();
  return chebyshev_check(src, quantize(src, cfg.eta()), cfg);
}

ChebyshevReport chebyshev_check(const ContinuousSource& src, const QuantizerResult& q,
                                const ChebyshevCheckConfig& cfg) {
  cfg.validate();
  ChebyshevReport r;
  r.eta = cfg.eta();
  r.eta_achieved = q.eta_achieved;
  r.cells = q.cells;
  r.bound = r.eta / (cfg.delta * cfg.delta);
  const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.n));
  long exceed = 0;
  long s_below = 0;
  long t_below = 0;
  long disagree = 0;   // |D| = 1
  long net = 0;        // sum of D = 1{S<=x} - 1{T<=x}
  for (long rep = 0; rep < cfg.samples; ++rep) {
    SeededRng rng(child_seed(cfg.seed, static_cast<std::uint64_t>(rep)));
    double s = 0.0;
    double t = 0.0;
    for (long i = 0; i < cfg.n; ++i) {
      const CoupledPair p = coupled_sample(src, q, rng);
      s += p.x;
      t += p.y;
    }
    s *= scale;
    t *= scale;
    if (std::abs(s - t) > cfg.delta) ++exceed;
    const bool sb = s <= cfg.x;
    const bool tb = t <= cfg.x;
    s_below += sb;
    t_below += tb;
    if (sb != tb) {
      ++disagree;
      net += sb ? 1 : -1;
    }
  }
  const auto m = static_cast<double>(cfg.samples);
  r.empirical = static_cast<double>(exceed) / m;
  r.mc_band = 3.0 * std::sqrt(cfg.epsilon * (1.0 - cfg.epsilon) / m);
  r.pass = r.empirical <= r.bound + r.mc_band;
  r.p_s = static_cast<double>(s_below) / m;
  r.p_t = static_cast<double>(t_below) / m;
  r.cdf_gap = std::abs(r.p_s - r.p_t);
  const double mean_d = static_cast<double>(net) / m;
  const double var_d = static_cast<double>(disagree) / m - mean_d * mean_d;
  r.cdf_gap_band = 3.0 * std::sqrt(std::max(var_d, 0.0) / m);
  r.cdf_pass = r.cdf_gap <= 2.0 * cfg.epsilon + r.cdf_gap_band;
  return r;
}

BracketReport bracket_check(const ContinuousSource& src, const QuantizerResult& q, double delta, long n,
                            double x, long samples, std::uint64_t seed) {
  if (!(delta > 0) || n < 1 || samples < 1) {
    throw Error(ErrorKind::InvalidArgument, "bracket_check needs delta > 0, n >= 1, samples >= 1");
  }
  BracketReport r;
  const LatticeDist t_law = convolve_power_lattice(q.simple, n);
  const std::vector<double> probes{x - delta, x, x + delta};
  const std::vector<double> t_cdf = cdf_scaled(t_law, n, probes);
  r.t_lower = t_cdf[0];
  r.t_at = t_cdf[1];
  r.t_upper = t_cdf[2];

  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  long below = 0;
  for (long rep = 0; rep < samples; ++rep) {
    SeededRng rng(child_seed(seed, static_cast<std::uint64_t>(rep)));
    double s = 0.0;
    for (long i = 0; i < n; ++i) s += src.std_inv_cdf(rng.uniform_open01());
    if (s * scale <= x) ++below;
  }
  r.p_s = static_cast<double>(below) / static_cast<double>(samples);
  r.mc_band = 3.0 * std::sqrt(std::max(r.p_s * (1.0 - r.p_s), 1e-12) / static_cast<double>(samples));
  r.phi_x = phi(x);
  r.coupling_bound = q.eta_achieved / (delta * delta);
  r.pass = r.p_s <= r.t_upper + r.coupling_bound + r.mc_band &&
           r.p_s >= r.t_lower - r.coupling_bound - r.mc_band;
  return r;
}

}  // namespace cltlab
