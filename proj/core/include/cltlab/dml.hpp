#pragma once

#include <string>
#include <vector>

#include "cltlab/binomial.hpp"

namespace cltlab {

/// One line of a convergence table.
struct ConvergenceRow {
  long n = 0;
  double statistic = 0.0;
  std::string label;
};

/// Exact Kolmogorov distance between the standardized Bin(n,p) CDF and phi.
///
/// The binomial CDF is a step function and phi is continuous and increasing,
/// so the supremum over all real x is attained at a jump point; both the value
/// at the jump and the limit from the left are compared. CDF values are exact
/// rationals rounded once to double.
double dml_kolmogorov(const BinomialSpec& spec);

struct DmlRow {
  long n = 0;
  Rational p;
  double d_k = 0.0;
  double stirling_ratio = 0.0;
};

std::vector<DmlRow> dml_table(const Rational& p, const std::vector<long>& n_list);

}  // namespace cltlab
