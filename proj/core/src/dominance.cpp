#include "kingsd/dominance.hpp"

#include <cmath>

namespace kingsd {

DominanceContext::DominanceContext(const DetectionProblem& p)
    : g_(&p.G), z_(&p.z) {
  const std::size_t m = p.depth();
  total_.assign(m, 0.0);
  prefix_ = RealMatrix(m, m + 1);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i)
      if (i != k) total_[k] += std::abs(p.G(k, i));
    for (std::size_t d = 0; d < m; ++d)
      prefix_(k, d + 1) = prefix_(k, d) + (d != k ? std::abs(p.G(k, d)) : 0.0);
  }
}

DominanceDecision dominance_check(const DominanceContext& ctx, std::size_t k,
                                  std::span<const int> known) {
  const std::size_t d = known.size();
  if (k >= ctx.size()) throw IndexOutOfRange("dominance_check: bad coordinate");
  if (k < d) throw InvalidArgument("dominance_check: coordinate already known");

  double s = ctx.matched_filter()[k];
  for (std::size_t m = 0; m < d; ++m) s -= known[m] * ctx.gram()(k, m);
  const double b = ctx.row_abs_total(k) - ctx.row_abs_prefix(k, d);
  if (std::abs(s) > b) return {true, s > 0.0 ? 1 : -1};
  return {false, 0};  // includes the measure-zero s == 0 case
}

double discrete_difference(const DetectionProblem& p, const std::vector<int>& x,
                           const std::vector<int>& xhat) {
  if (x.size() != xhat.size()) throw DimensionMismatch("discrete_difference");
  return full_metric(p, x) - full_metric(p, xhat);
}

double discrete_difference_k(const DetectionProblem& p, const std::vector<int>& x,
                             std::size_t k) {
  if (k >= x.size() || x.size() != p.depth())
    throw IndexOutOfRange("discrete_difference_k: bad coordinate");
  double bracket = p.z[k];
  for (std::size_t i = 0; i < x.size(); ++i)
    if (i != k) bracket -= x[i] * p.G(k, i);
  // xhat_k = -x_k, so (x_k - xhat_k) = 2 x_k
  return -2.0 * (2.0 * x[k]) * bracket;
}

DecodeResult king_decode(const DetectionProblem& p) {
  const std::size_t m = p.depth();
  if (m > 24) throw TooLarge("king_decode: dimension above enumeration guard");
  DominanceContext ctx(p);

  DecodeResult r;
  r.metric = std::numeric_limits<double>::infinity();
  std::vector<int> x(m);

  // Natural-order DFS over survivors; ties keep the lexicographically
  // smallest vector, matching ml_exhaustive.
  auto rec = [&](auto&& self, std::size_t d) -> void {
    if (d == m) {
      const double f = full_metric(p, x);
      if (f < r.metric) {
        r.metric = f;
        r.symbols = x;
      }
      return;
    }
    const DominanceDecision dec =
        dominance_check(ctx, d, std::span<const int>(x.data(), d));
    const int first = dec.decided ? dec.symbol : -1;
    const int last = dec.decided ? dec.symbol : +1;
    for (int c = first; c <= last; c += 2) {
      ++r.visited_nodes;
      x[d] = c;
      self(self, d + 1);
    }
  };
  rec(rec, 0);
  return r;
}

}  // namespace kingsd
