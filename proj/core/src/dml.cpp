#include "cltlab/dml.hpp"

#include <algorithm>
#include <cmath>

#include "cltlab/normal.hpp"

namespace cltlab {

double dml_kolmogorov(const BinomialSpec& spec) {
  const std::vector<Rational> cdf = binom_cdf_table(spec);
  const double p = spec.p.to_double();
  const auto n = static_cast<double>(spec.n);
  const double center = n * p;
  const double scale = std::sqrt(n * p * (1.0 - p));
  double sup = 0.0;
  double left = 0.0;  // CDF just below the current jump
  for (long k = 0; k <= spec.n; ++k) {
    const double at = cdf[static_cast<std::size_t>(k)].to_double();
    const double z = phi((static_cast<double>(k) - center) / scale);
    sup = std::max({sup, std::abs(left - z), std::abs(at - z)});
    left = at;
  }
  return sup;
}

std::vector<DmlRow> dml_table(const Rational& p, const std::vector<long>& n_list) {
  std::vector<DmlRow> rows;
  rows.reserve(n_list.size());
  for (long n : n_list) {
    const BinomialSpec spec = BinomialSpec::make(n, p);
    rows.push_back({n, p, dml_kolmogorov(spec), stirling_ratio(n)});
  }
  return rows;
}

}  // namespace cltlab
