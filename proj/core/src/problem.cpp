#include "kingsd/problem.hpp"

namespace kingsd {

DetectionProblem make_detection_problem(RealMatrix hr, RealVector yr) {
  if (hr.rows() != yr.size()) throw DimensionMismatch("detection problem shape");
  // Underdetermined systems (the layered 16-QAM model with N < 2K) are
  // squared up with zero rows: the metric and Gram data are unchanged.
  if (hr.rows() < hr.cols()) {
    RealMatrix padded(hr.cols(), hr.cols());
    for (std::size_t i = 0; i < hr.rows(); ++i)
      for (std::size_t j = 0; j < hr.cols(); ++j) padded(i, j) = hr(i, j);
    hr = std::move(padded);
    yr.resize(hr.cols(), 0.0);
  }
  DetectionProblem p;
  QlFactors f = ql_factorize(hr, /*allow_rank_deficient=*/true);
  p.L = std::move(f.L);
  p.y_tilde = transpose_times(f.Q, yr);
  GramData g = gram_and_matched_filter(hr, yr);
  p.G = std::move(g.G);
  p.z = std::move(g.z);
  p.residual = norm_sq(yr) - norm_sq(p.y_tilde);
  if (p.residual < 0.0) p.residual = 0.0;
  p.Hr = std::move(hr);
  p.yr = std::move(yr);
  return p;
}

double full_metric(const DetectionProblem& p, const std::vector<int>& symbols) {
  if (symbols.size() != p.depth()) throw DimensionMismatch("full_metric shape");
  double m = 0.0;
  for (std::size_t i = 0; i < p.Hr.rows(); ++i) {
    double r = p.yr[i];
    for (std::size_t j = 0; j < p.Hr.cols(); ++j) r -= p.Hr(i, j) * symbols[j];
    m += r * r;
  }
  return m;
}

}  // namespace kingsd
