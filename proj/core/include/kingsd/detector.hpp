#pragma once

#include <array>
#include <cstdint>
#include <limits>

#include "kingsd/problem.hpp"

namespace kingsd {

enum class Traversal { Dfs, Bfs };
enum class Enumeration { Natural, ZigZag };

struct SearchConfig {
  Traversal traversal = Traversal::Dfs;
  Enumeration enumeration = Enumeration::ZigZag;
  /// Squared initial radius. DFS may start infinite; BFS falls back to the
  /// Babai radius when left infinite.
  double initial_radius_sq = std::numeric_limits<double>::infinity();
  /// When set, seeds the radius with the greedy zig-zag leaf metric, which
  /// guarantees at least one leaf inside the sphere.
  bool babai_radius = false;
  /// Growth factor applied to the squared radius when no leaf survives.
  double restart_growth = 4.0;
  bool dominance_enabled = false;
};

struct DecodeResult {
  std::vector<int> symbols;       // in {-1,+1}
  double metric = 0.0;            // full Euclidean distance |yr - Hr x|^2
  std::uint64_t visited_nodes = 0;
  std::uint32_t restarts = 0;
};

/// A partial assignment of the first `depth` coordinates.
struct Node {
  std::size_t depth = 0;
  std::vector<int> symbols;  // x_1..x_depth
  double apd = 0.0;          // accumulated partial distance
};

/// Global argmin over {-1,+1}^M by full scan; ties broken lexicographically
/// with -1 < +1. visited_nodes is 2^M by convention.
DecodeResult ml_exhaustive(const DetectionProblem& p);

/// node.apd plus the next layer term |y~_{d+1} - sum_j l_{d+1,j} x_j|^2.
double partial_distance(const Node& node, int candidate,
                        const DetectionProblem& p);

/// Candidate order for the next coordinate: Natural is (-1,+1); ZigZag puts
/// the symbol nearest the unconstrained layer estimate first, -1 on ties.
std::array<int, 2> enumerate_children(const Node& node,
                                      const DetectionProblem& p,
                                      Enumeration order);

/// Metric of the greedy zig-zag leaf (tree coordinates, residual excluded).
double babai_radius_sq(const DetectionProblem& p);

DecodeResult sphere_decode(const DetectionProblem& p, const SearchConfig& cfg);

/// Sphere decoder with conditional dominance checks at every node.
DecodeResult king_sphere_decode(const DetectionProblem& p, SearchConfig cfg);

}  // namespace kingsd
