#pragma once

#include <span>

#include "kingsd/detector.hpp"
#include "kingsd/problem.hpp"

namespace kingsd {

/// Cached per-problem data for the dominance tests: the Gram matrix, the
/// matched-filter output, and prefix sums of |g_ki| so each check is O(1)
/// in the interference bound.
class DominanceContext {
 public:
  explicit DominanceContext(const DetectionProblem& p);

  /// Sum_{i != k} |g_ki|.
  double row_abs_total(std::size_t k) const { return total_[k]; }
  /// Sum_{m < d} |g_km| (k >= d, so k itself never enters).
  double row_abs_prefix(std::size_t k, std::size_t d) const {
    return prefix_(k, d);
  }
  const RealMatrix& gram() const { return *g_; }
  const RealVector& matched_filter() const { return *z_; }
  std::size_t size() const { return total_.size(); }

 private:
  const RealMatrix* g_;
  const RealVector* z_;
  std::vector<double> total_;
  RealMatrix prefix_;  // M x (M+1)
};

struct DominanceDecision {
  bool decided = false;
  int symbol = 0;  // sign of the conditional matched-filter statistic
};

/// Conditional dominance test for coordinate k given the first
/// known.size() coordinates fixed. With no known symbols this is the
/// unconditional test |z_k| > sum_{i != k} |g_ki|.
DominanceDecision dominance_check(const DominanceContext& ctx, std::size_t k,
                                  std::span<const int> known);

/// f(x) - f(xhat) evaluated directly from the lifted model.
double discrete_difference(const DetectionProblem& p, const std::vector<int>& x,
                           const std::vector<int>& xhat);

/// Closed form of the k-th discrete difference for BPSK coordinates,
/// with xhat equal to x with coordinate k flipped:
/// -2 (x_k - xhat_k) (z_k - sum_{i != k} x_i g_ki).
double discrete_difference_k(const DetectionProblem& p, const std::vector<int>& x,
                             std::size_t k);

/// Tree search driven by the dominance conditions alone; survivors are
/// scored by the full Euclidean metric.
DecodeResult king_decode(const DetectionProblem& p);

}  // namespace kingsd
