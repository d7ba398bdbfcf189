#include "kingsd/detector.hpp"

#include <cmath>
#include <deque>
#include <optional>
#include <stdexcept>

#include "kingsd/dominance.hpp"

namespace kingsd {

namespace {

// e_d = y~_d - sum_{j<d} l_dj x_j, the layer residual before choosing x_d.
double layer_residual(const DetectionProblem& p, std::size_t d,
                      const std::vector<int>& x) {
  double e = p.y_tilde[d];
  for (std::size_t j = 0; j < d; ++j) e -= p.L(d, j) * x[j];
  return e;
}

}  // namespace

DecodeResult ml_exhaustive(const DetectionProblem& p) {
  const std::size_t m = p.depth();
  if (m > 24) throw TooLarge("ml_exhaustive: dimension above enumeration guard");
  DecodeResult r;
  r.metric = std::numeric_limits<double>::infinity();
  std::vector<int> x(m);
  const std::uint64_t count = std::uint64_t{1} << m;
  for (std::uint64_t pat = 0; pat < count; ++pat) {
    // x_1 is the most significant bit, so pat order is lexicographic
    // with -1 < +1 and the first strict minimum is the lexicographic one.
    for (std::size_t j = 0; j < m; ++j)
      x[j] = (pat >> (m - 1 - j)) & 1u ? 1 : -1;
    const double f = full_metric(p, x);
    if (f < r.metric) {
      r.metric = f;
      r.symbols = x;
    }
  }
  r.visited_nodes = count;
  return r;
}

double partial_distance(const Node& node, int candidate,
                        const DetectionProblem& p) {
  const std::size_t d = node.depth;
  if (d >= p.depth()) throw IndexOutOfRange("partial_distance: node is a leaf");
  const double e = layer_residual(p, d, node.symbols) - p.L(d, d) * candidate;
  return node.apd + e * e;
}

std::array<int, 2> enumerate_children(const Node& node,
                                      const DetectionProblem& p,
                                      Enumeration order) {
  if (order == Enumeration::Natural) return {-1, +1};
  const std::size_t d = node.depth;
  if (d >= p.depth()) throw IndexOutOfRange("enumerate_children: node is a leaf");
  // L's diagonal is nonnegative, so the estimate e/l_dd shares e's sign; a
  // zero pivot (deficient 16-QAM layer) leaves no estimate and ties to -1.
  if (p.L(d, d) > 0.0 && layer_residual(p, d, node.symbols) > 0.0)
    return {+1, -1};
  return {-1, +1};
}

double babai_radius_sq(const DetectionProblem& p) {
  const std::size_t m = p.depth();
  std::vector<int> x(m);
  double apd = 0.0;
  for (std::size_t d = 0; d < m; ++d) {
    double e = p.y_tilde[d];
    for (std::size_t j = 0; j < d; ++j) e -= p.L(d, j) * x[j];
    x[d] = e > 0.0 ? 1 : -1;
    const double t = e - p.L(d, d) * x[d];
    apd += t * t;
  }
  return apd;
}

namespace {

class SearchEngine {
 public:
  SearchEngine(const DetectionProblem& p, const SearchConfig& cfg)
      : p_(p), cfg_(cfg), m_(p.depth()) {
    if (cfg.restart_growth <= 1.0)
      throw InvalidArgument("sphere_decode: restart_growth must exceed 1");
    if (cfg.dominance_enabled) dom_.emplace(p);
  }

  DecodeResult run() {
    double radius = cfg_.babai_radius ? babai_radius_sq(p_)
                                      : cfg_.initial_radius_sq;
    if (cfg_.traversal == Traversal::Bfs && std::isinf(radius))
      radius = babai_radius_sq(p_);

    for (;;) {
      radius_sq_ = radius;
      best_metric_ = std::numeric_limits<double>::infinity();
      best_.clear();
      if (cfg_.traversal == Traversal::Dfs) {
        std::vector<int> x(m_);
        dfs(0, 0.0, x);
      } else {
        bfs();
      }
      if (!best_.empty()) break;
      if (!std::isfinite(radius))
        throw std::runtime_error("sphere_decode: no leaf inside infinite radius");
      radius *= cfg_.restart_growth;
      ++restarts_;
    }

    DecodeResult r;
    r.symbols = std::move(best_);
    r.metric = best_metric_ + p_.residual;
    r.visited_nodes = visited_;
    r.restarts = restarts_;
    return r;
  }

 private:
  // Candidate symbols for coordinate d in visit order; dominance, when it
  // fires, leaves a single branch and the excluded child is never evaluated.
  std::size_t candidates(std::size_t d, const std::vector<int>& x, double e,
                         int out[2]) const {
    if (dom_) {
      const DominanceDecision dec =
          dominance_check(*dom_, d, std::span<const int>(x.data(), d));
      if (dec.decided) {
        out[0] = dec.symbol;
        return 1;
      }
    }
    if (cfg_.enumeration == Enumeration::ZigZag && p_.L(d, d) > 0.0 &&
        e > 0.0) {
      out[0] = +1;
      out[1] = -1;
    } else {
      out[0] = -1;
      out[1] = +1;
    }
    return 2;
  }

  void dfs(std::size_t d, double apd, std::vector<int>& x) {
    double e = p_.y_tilde[d];
    for (std::size_t j = 0; j < d; ++j) e -= p_.L(d, j) * x[j];

    int cand[2];
    const std::size_t nc = candidates(d, x, e, cand);
    double pd[2];
    for (std::size_t i = 0; i < nc; ++i) {
      const double t = e - p_.L(d, d) * cand[i];
      pd[i] = apd + t * t;
      ++visited_;
    }
    for (std::size_t i = 0; i < nc; ++i) {
      if (pd[i] > radius_sq_) continue;  // radius may have shrunk since eval
      x[d] = cand[i];
      if (d + 1 == m_) {
        if (pd[i] < best_metric_) {
          best_metric_ = pd[i];
          best_ = x;
          radius_sq_ = pd[i];  // DFS tightens the radius at each new best leaf
        }
      } else {
        dfs(d + 1, pd[i], x);
      }
    }
  }

  void bfs() {
    struct QNode {
      double apd;
      std::vector<int> sym;
    };
    std::deque<QNode> queue;
    queue.push_back({0.0, {}});
    while (!queue.empty()) {
      QNode n = std::move(queue.front());
      queue.pop_front();
      const std::size_t d = n.sym.size();
      double e = p_.y_tilde[d];
      for (std::size_t j = 0; j < d; ++j) e -= p_.L(d, j) * n.sym[j];

      int cand[2];
      const std::size_t nc = candidates(d, n.sym, e, cand);
      for (std::size_t i = 0; i < nc; ++i) {
        const double t = e - p_.L(d, d) * cand[i];
        const double pd = n.apd + t * t;
        ++visited_;
        if (pd > radius_sq_) continue;
        if (d + 1 == m_) {
          if (pd < best_metric_) {
            best_metric_ = pd;
            best_ = n.sym;
            best_.push_back(cand[i]);
          }
        } else {
          QNode child{pd, n.sym};
          child.sym.push_back(cand[i]);
          queue.push_back(std::move(child));
        }
      }
    }
  }

  const DetectionProblem& p_;
  const SearchConfig& cfg_;
  std::size_t m_;
  std::optional<DominanceContext> dom_;
  double radius_sq_ = 0.0;
  double best_metric_ = 0.0;
  std::vector<int> best_;
  std::uint64_t visited_ = 0;
  std::uint32_t restarts_ = 0;
};

}  // namespace

DecodeResult sphere_decode(const DetectionProblem& p, const SearchConfig& cfg) {
  if (p.depth() == 0) throw DimensionMismatch("sphere_decode: empty problem");
  return SearchEngine(p, cfg).run();
}

DecodeResult king_sphere_decode(const DetectionProblem& p, SearchConfig cfg) {
  cfg.dominance_enabled = true;
  return sphere_decode(p, cfg);
}

}  // namespace kingsd
