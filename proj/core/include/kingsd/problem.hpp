#pragma once

#include "kingsd/linalg.hpp"

namespace kingsd {

/// A real-valued integer-least-squares instance over the alphabet {-1,+1}.
/// Carries both the QL-transformed system (for tree metrics) and the
/// original Gram/matched-filter data (for dominance conditions).
struct DetectionProblem {
  RealMatrix Hr;        // lifted channel, rows x M
  RealVector yr;        // lifted observation
  RealMatrix L;         // M x M lower triangular, positive diagonal
  RealVector y_tilde;   // Q^T yr, length M
  RealMatrix G;         // Hr^T Hr
  RealVector z;         // Hr^T yr
  double residual = 0;  // |yr|^2 - |y_tilde|^2, component outside span(Hr)

  std::size_t depth() const { return Hr.cols(); }
};

/// Factorizes and caches everything the detectors need.
DetectionProblem make_detection_problem(RealMatrix hr, RealVector yr);

/// Full Euclidean metric |yr - Hr x|^2 for symbols in {-1,+1}.
double full_metric(const DetectionProblem& p, const std::vector<int>& symbols);

}  // namespace kingsd
