#pragma once

#include <initializer_list>
#include <vector>

#include "kingsd/problem.hpp"
#include "kingsd/rng.hpp"

namespace kingsd::test {

inline RealMatrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  RealMatrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline RealMatrix random_matrix(std::size_t rows, std::size_t cols,
                                RandomStream& rs) {
  RealMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rs.normal();
  return m;
}

inline RealVector random_vector(std::size_t n, RandomStream& rs) {
  RealVector v(n);
  for (double& x : v) x = rs.normal();
  return v;
}

/// Random full-rank Gaussian instance with BPSK data plus noise.
inline DetectionProblem random_problem(std::size_t rows, std::size_t cols,
                                       RandomStream& rs,
                                       double noise_sigma = 1.0) {
  RealMatrix hr = random_matrix(rows, cols, rs);
  RealVector yr(rows);
  std::vector<int> x(cols);
  for (int& s : x) s = rs.pm1();
  for (std::size_t i = 0; i < rows; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) acc += hr(i, j) * x[j];
    yr[i] = acc + noise_sigma * rs.normal();
  }
  return make_detection_problem(std::move(hr), std::move(yr));
}

inline double max_abs_diff(const RealMatrix& a, const RealMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace kingsd::test
