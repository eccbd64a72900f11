#include "cltlab/decompose.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "cltlab/error.hpp"
#include "cltlab/rng.hpp"

namespace cltlab {

TwoValued TwoValued::make(const Rational& a, const Rational& b, const Rational& prob_pos) {
  if (a.sign() <= 0 || b.sign() <= 0) {
    throw Error(ErrorKind::InvalidArgument, "two-valued support points must satisfy a, b > 0");
  }
  if (prob_pos.sign() <= 0 || prob_pos >= Rational(1)) {
    throw Error(ErrorKind::InvalidArgument, "prob_pos must lie in (0,1), got " + prob_pos.str());
  }
  if (a * prob_pos != b * (Rational(1) - prob_pos)) {
    throw Error(ErrorKind::NonZeroMean, "component {" + a.str() + ", -" + b.str() + "} with p_pos " +
                                            prob_pos.str() + " is not mean-zero");
  }
  TwoValued t;
  t.pos_ = a;
  t.neg_ = b;
  t.prob_pos_ = prob_pos;
  t.degenerate_ = false;
  return t;
}

TwoValued TwoValued::zero() { return TwoValued(); }

Rational TwoValued::second_moment() const {
  if (degenerate_) return Rational(0);
  return pos_ * pos_ * prob_pos_ + neg_ * neg_ * prob_neg();
}

FiniteDist TwoValued::law() const {
  if (degenerate_) return point_mass(Rational(0));
  return FiniteDist::make({{-neg_, prob_neg()}, {pos_, prob_pos_}});
}

Mixture Mixture::make(std::vector<MixtureComponent> components) {
  if (components.empty()) throw Error(ErrorKind::SumNotOne, "mixture has no components");
  Rational total;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].weight.sign() <= 0) {
      throw Error(ErrorKind::NonPositiveProb,
                  "component " + std::to_string(i) + " has weight " + components[i].weight.str());
    }
    total += components[i].weight;
  }
  if (total != Rational(1)) throw Error(ErrorKind::SumNotOne, "mixture weights sum to " + total.str());
  return Mixture(std::move(components));
}

std::vector<Rational> Mixture::weights() const {
  std::vector<Rational> w;
  w.reserve(components_.size());
  for (const auto& c : components_) w.push_back(c.weight);
  return w;
}

Mixture decompose(const FiniteDist& d) {
  if (const Rational mu = mean(d); !mu.is_zero()) {
    throw Error(ErrorKind::NonZeroMean, "decompose needs an exactly mean-zero law, mean is " + mu.str());
  }

  std::vector<MixtureComponent> out;
  // Residual masses, unnormalized: consuming mass from the original law is the
  // same as renormalizing the conditional residual after every step.
  std::vector<Atom> positives;
  std::vector<Atom> negatives;  // stored as (b, mass) with b = |value|
  for (const auto& a : d.atoms()) {
    if (a.value.is_zero()) {
      out.push_back({a.prob, TwoValued::zero()});
    } else if (a.value.sign() > 0) {
      positives.push_back(a);
    } else {
      negatives.push_back({-a.value, a.prob});
    }
  }
  // Smallest magnitude first on both sides.
  std::sort(negatives.begin(), negatives.end(),
            [](const Atom& x, const Atom& y) { return x.value < y.value; });

  const std::size_t initial_atoms = d.size();
  std::size_t steps = out.size();
  std::size_t ip = 0;
  std::size_t in = 0;
  while (ip < positives.size() && in < negatives.size()) {
    if (++steps > initial_atoms) {
      throw Error(ErrorKind::NonConvergence, "decomposition did not shrink the residual");
    }
    Atom& pa = positives[ip];
    Atom& nb = negatives[in];
    const Rational pos_moment = pa.value * pa.prob;
    const Rational neg_moment = nb.value * nb.prob;
    Rational pos_mass;
    Rational neg_mass;
    if (pos_moment <= neg_moment) {
      pos_mass = pa.prob;
      neg_mass = pos_moment / nb.value;
    } else {
      neg_mass = nb.prob;
      pos_mass = neg_moment / pa.value;
    }
    const Rational weight = pos_mass + neg_mass;
    out.push_back({weight, TwoValued::make(pa.value, nb.value, pos_mass / weight)});
    pa.prob -= pos_mass;
    nb.prob -= neg_mass;
    if (pa.prob.is_zero()) ++ip;
    if (nb.prob.is_zero()) ++in;
  }
  if (ip != positives.size() || in != negatives.size()) {
    throw Error(ErrorKind::NonZeroMean, "residual mass left on one side only");
  }
  return Mixture::make(std::move(out));
}

FiniteDist recompose(const Mixture& m) {
  std::vector<Atom> atoms;
  for (const auto& c : m.components()) {
    const FiniteDist law = c.component.law();
    for (const auto& a : law.atoms()) atoms.push_back({a.value, c.weight * a.prob});
  }
  return FiniteDist::merge(std::move(atoms));
}

Rational sample_mixture(const Mixture& m, SeededRng& rng) {
  const std::vector<Rational> w = m.weights();
  const std::size_t theta = CategoricalSampler(w)(rng);
  const TwoValued& y = m.components()[theta].component;
  if (y.degenerate()) return Rational(0);
  return rng.bernoulli(y.prob_pos()) ? y.pos() : -y.neg();
}

}  // namespace cltlab
