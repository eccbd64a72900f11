#include "cltlab/rng.hpp"

#include <algorithm>

#include "cltlab/error.hpp"

namespace cltlab {

CategoricalSampler::CategoricalSampler(std::span<const Rational> weights) {
  if (weights.empty()) throw Error(ErrorKind::InvalidArgument, "categorical sampler needs weights");
  Rational total;
  for (const auto& w : weights) total += w;
  Rational acc;
  cumulative_.reserve(weights.size());
  for (const auto& w : weights) {
    acc += w;
    cumulative_.push_back((acc / total).to_double());
  }
  cumulative_.back() = 1.0;
}

std::size_t CategoricalSampler::operator()(SeededRng& rng) const {
  const double u = rng.uniform01();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
}

}  // namespace cltlab
