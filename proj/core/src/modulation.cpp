#include "kingsd/modulation.hpp"

#include <cmath>

namespace kingsd {

double normalize_energy(Modulation mod, std::size_t k, double ex) {
  if (ex <= 0.0) throw InvalidArgument("normalize_energy: Ex must be positive");
  if (k < 1) throw InvalidArgument("normalize_energy: K must be >= 1");
  switch (mod) {
    case Modulation::FourQam:
      return std::sqrt(ex / (2.0 * static_cast<double>(k)));
    case Modulation::SixteenQam:
      // E|x1 + 2 x2|^2 = 10 per complex symbol on the unit grid.
      return std::sqrt(ex / (10.0 * static_cast<double>(k)));
  }
  throw InvalidArgument("normalize_energy: bad modulation");
}

DetectionProblem lift_4qam(const ComplexMatrix& h, const ComplexVector& y,
                           double scale) {
  if (scale <= 0.0) throw InvalidArgument("lift_4qam: scale must be positive");
  ComplexMatrix hs(h.rows(), h.cols());
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) hs(i, j) = scale * h(i, j);
  RealModel m = complex_to_real_model(hs, y);
  return make_detection_problem(std::move(m.H), std::move(m.y));
}

ComplexMatrix expand_16qam(const ComplexMatrix& h) {
  ComplexMatrix e(h.rows(), 2 * h.cols());
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) {
      e(i, j) = h(i, j);
      e(i, j + h.cols()) = 2.0 * h(i, j);
    }
  return e;
}

ComplexVector recompose_16qam(const ComplexVector& x1, const ComplexVector& x2) {
  if (x1.size() != x2.size()) throw DimensionMismatch("recompose_16qam shape");
  ComplexVector out(x1.size());
  for (std::size_t i = 0; i < x1.size(); ++i) out[i] = x1[i] + 2.0 * x2[i];
  return out;
}

std::size_t search_depth(Modulation mod, std::size_t k) {
  return mod == Modulation::FourQam ? 2 * k : 4 * k;
}

ComplexVector symbols_from_search(Modulation mod, const std::vector<int>& s,
                                  std::size_t k) {
  if (s.size() != search_depth(mod, k))
    throw DimensionMismatch("symbols_from_search: bad length");
  ComplexVector out(k);
  if (mod == Modulation::FourQam) {
    for (std::size_t j = 0; j < k; ++j)
      out[j] = cplx(static_cast<double>(s[j]), static_cast<double>(s[j + k]));
  } else {
    for (std::size_t j = 0; j < k; ++j) {
      const cplx x1(static_cast<double>(s[j]), static_cast<double>(s[j + 2 * k]));
      const cplx x2(static_cast<double>(s[j + k]),
                    static_cast<double>(s[j + 3 * k]));
      out[j] = x1 + 2.0 * x2;
    }
  }
  return out;
}

}  // namespace kingsd
