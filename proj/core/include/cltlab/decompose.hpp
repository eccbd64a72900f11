#pragma once

#include <vector>

#include "cltlab/finite_dist.hpp"
#include "cltlab/rational.hpp"

namespace cltlab {

class SeededRng;

/// Mean-zero law on at most two points {+a, -b}: mass prob_pos at +a and
/// 1 - prob_pos at -b, with a*prob_pos = b*(1 - prob_pos). The degenerate
/// member is the point mass at 0.
class TwoValued {
 public:
  /// Throws NonZeroMean unless a*p_pos == b*(1 - p_pos); a, b > 0, 0 < p_pos < 1.
  static TwoValued make(const Rational& a, const Rational& b, const Rational& prob_pos);
  static TwoValued zero();

  bool degenerate() const noexcept { return degenerate_; }
  const Rational& pos() const noexcept { return pos_; }
  const Rational& neg() const noexcept { return neg_; }
  const Rational& prob_pos() const noexcept { return prob_pos_; }
  Rational prob_neg() const { return Rational(1) - prob_pos_; }

  Rational second_moment() const;
  FiniteDist law() const;

  friend bool operator==(const TwoValued&, const TwoValued&) = default;

 private:
  TwoValued() = default;
  Rational pos_;
  Rational neg_;
  Rational prob_pos_;
  bool degenerate_ = true;
};

struct MixtureComponent {
  Rational weight;
  TwoValued component;

  friend bool operator==(const MixtureComponent&, const MixtureComponent&) = default;
};

/// Finite mixture: draw theta with P(theta = i) = weight_i, then draw from
/// component theta. Weights are positive and sum to exactly one.
class Mixture {
 public:
  static Mixture make(std::vector<MixtureComponent> components);

  const std::vector<MixtureComponent>& components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }
  std::vector<Rational> weights() const;

  friend bool operator==(const Mixture&, const Mixture&) = default;

 private:
  explicit Mixture(std::vector<MixtureComponent> c) : components_(std::move(c)) {}
  std::vector<MixtureComponent> components_;
};

/// Writes a simple mean-zero law as a finite mixture of two-valued mean-zero
/// laws, exactly.
///
/// The zero atom (if any) is peeled off first as the degenerate component.
/// Each following step pairs the smallest positive atom a with the smallest
/// negative atom -b. The side with the smaller first moment is consumed whole
/// and just enough mass is taken from the other side to balance it; on a tie
/// both atoms are consumed. Every step removes at least one atom, so there are
/// never more components than atoms. Throws NonZeroMean.
Mixture decompose(const FiniteDist& d);

/// Exact law of the mixture.
FiniteDist recompose(const Mixture& m);

/// Draws theta by weight, then a value from that component.
Rational sample_mixture(const Mixture& m, SeededRng& rng);

}  // namespace cltlab
