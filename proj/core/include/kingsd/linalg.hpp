#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "kingsd/errors.hpp"

namespace kingsd {

using cplx = std::complex<double>;
using RealVector = std::vector<double>;
using ComplexVector = std::vector<cplx>;

/// Dense row-major real matrix. Sizes in this project are small (<= ~32),
/// so no effort is spent on blocking or expression templates.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static RealMatrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  cplx operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
RealVector operator*(const RealMatrix& a, const RealVector& v);
ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);

RealMatrix transpose(const RealMatrix& a);
/// A^T * B without forming the transpose.
RealMatrix transpose_times(const RealMatrix& a, const RealMatrix& b);
RealVector transpose_times(const RealMatrix& a, const RealVector& v);

double dot(const RealVector& a, const RealVector& b);
double norm_sq(const RealVector& v);

struct QlFactors {
  RealMatrix Q;  // rows x cols, orthonormal columns
  RealMatrix L;  // cols x cols, lower triangular, positive diagonal
};

/// QL factorization A = Q * L via Householder reflections applied to the
/// row/column-reversed matrix. Requires rows >= cols; by default a diagonal
/// pivot below 1e-10 of its column norm raises RankDeficient. The layered
/// 16-QAM model [H, 2H] is column-deficient by construction, so detection
/// passes allow_rank_deficient to snap such pivots to exactly zero instead.
QlFactors ql_factorize(const RealMatrix& a, bool allow_rank_deficient = false);

/// Symmetric PSD square root via Jacobi eigendecomposition.
RealMatrix psd_sqrt(const RealMatrix& r);

struct RealModel {
  RealMatrix H;   // 2N x 2K
  RealVector y;   // 2N
};

/// Lifts y = Hx + n to the doubled real model
/// [[Re H, -Im H], [Im H, Re H]], [Re y; Im y].
RealModel complex_to_real_model(const ComplexMatrix& h, const ComplexVector& y);

struct GramData {
  RealMatrix G;  // Hr^T Hr
  RealVector z;  // Hr^T yr
};

GramData gram_and_matched_filter(const RealMatrix& hr, const RealVector& yr);

/// Eigendecomposition of a symmetric matrix (cyclic Jacobi).
/// Returns eigenvalues and the orthogonal eigenvector matrix V (columns).
struct SymmetricEigen {
  RealVector values;
  RealMatrix vectors;
};
SymmetricEigen symmetric_eigen(const RealMatrix& a);

}  // namespace kingsd
