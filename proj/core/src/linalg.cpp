#include "kingsd/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace kingsd {

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape");
  RealMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

RealVector operator*(const RealMatrix& a, const RealVector& v) {
  if (a.cols() != v.size()) throw DimensionMismatch("matrix-vector shape");
  RealVector out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v) {
  if (a.cols() != v.size()) throw DimensionMismatch("matrix-vector shape");
  ComplexVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("matrix sum shape");
  ComplexMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

RealMatrix transpose(const RealMatrix& a) {
  RealMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

RealMatrix transpose_times(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("A^T B shape");
  RealMatrix c(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k)
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double aki = a(k, i);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aki * b(k, j);
    }
  return c;
}

RealVector transpose_times(const RealMatrix& a, const RealVector& v) {
  if (a.rows() != v.size()) throw DimensionMismatch("A^T v shape");
  RealVector out(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += a(i, j) * v[i];
  return out;
}

double dot(const RealVector& a, const RealVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot shape");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_sq(const RealVector& v) { return dot(v, v); }

namespace {

// Thin Householder QR: A (m x n, m >= n) -> Q (m x n), R (n x n upper).
void householder_qr(const RealMatrix& a, RealMatrix& q, RealMatrix& r) {
  const std::size_t m = a.rows(), n = a.cols();
  RealMatrix work = a;                       // reduced in place
  std::vector<RealVector> reflectors;
  reflectors.reserve(n);

  for (std::size_t k = 0; k < n; ++k) {
    double nrm = 0.0;
    for (std::size_t i = k; i < m; ++i) nrm += work(i, k) * work(i, k);
    nrm = std::sqrt(nrm);
    RealVector v(m, 0.0);
    if (nrm > 0.0) {
      const double alpha = work(k, k) >= 0.0 ? -nrm : nrm;
      v[k] = work(k, k) - alpha;
      for (std::size_t i = k + 1; i < m; ++i) v[i] = work(i, k);
      double vn = 0.0;
      for (std::size_t i = k; i < m; ++i) vn += v[i] * v[i];
      if (vn > 0.0) {
        for (std::size_t j = k; j < n; ++j) {
          double s = 0.0;
          for (std::size_t i = k; i < m; ++i) s += v[i] * work(i, j);
          const double f = 2.0 * s / vn;
          for (std::size_t i = k; i < m; ++i) work(i, j) -= f * v[i];
        }
      }
      v.push_back(vn);  // stash |v|^2 in the tail
    } else {
      v.push_back(0.0);
    }
    reflectors.push_back(std::move(v));
  }

  r = RealMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) r(i, j) = work(i, j);

  // Q = H_0 ... H_{n-1} applied to the first n columns of the identity.
  q = RealMatrix(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    RealVector e(m, 0.0);
    e[j] = 1.0;
    for (std::size_t k = n; k-- > 0;) {
      const RealVector& v = reflectors[k];
      const double vn = v[m];
      if (vn <= 0.0) continue;
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += v[i] * e[i];
      const double f = 2.0 * s / vn;
      for (std::size_t i = k; i < m; ++i) e[i] -= f * v[i];
    }
    for (std::size_t i = 0; i < m; ++i) q(i, j) = e[i];
  }
}

}  // namespace

QlFactors ql_factorize(const RealMatrix& a, bool allow_rank_deficient) {
  const std::size_t m = a.rows(), n = a.cols();
  if (m < n) throw DimensionMismatch("ql_factorize: rows < cols");
  if (n == 0) throw DimensionMismatch("ql_factorize: empty matrix");

  // Reverse rows and columns, QR, reverse back: lower triangle comes out.
  RealMatrix b(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = a(m - 1 - i, n - 1 - j);

  RealMatrix qb, rb;
  householder_qr(b, qb, rb);

  for (std::size_t j = 0; j < n; ++j) {
    double colnorm = 0.0;
    for (std::size_t i = 0; i < m; ++i) colnorm += b(i, j) * b(i, j);
    colnorm = std::sqrt(colnorm);
    if (std::abs(rb(j, j)) < 1e-10 * std::max(colnorm, 1e-300)) {
      if (!allow_rank_deficient)
        throw RankDeficient("ql_factorize: rank-deficient matrix");
      rb(j, j) = 0.0;  // dependent column: layer carries no pivot
    }
  }

  QlFactors f;
  f.Q = RealMatrix(m, n);
  f.L = RealMatrix(n, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) f.Q(i, j) = qb(m - 1 - i, n - 1 - j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) f.L(i, j) = rb(n - 1 - i, n - 1 - j);

  // Positive diagonal: flip column j of Q together with row j of L.
  for (std::size_t j = 0; j < n; ++j) {
    if (f.L(j, j) < 0.0) {
      for (std::size_t i = 0; i < m; ++i) f.Q(i, j) = -f.Q(i, j);
      for (std::size_t c = 0; c <= j; ++c) f.L(j, c) = -f.L(j, c);
    }
  }
  return f;
}

SymmetricEigen symmetric_eigen(const RealMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("symmetric_eigen: not square");
  const std::size_t n = a.rows();
  RealMatrix m = a;
  RealMatrix v = RealMatrix::identity(n);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
    if (off < 1e-30) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(m(p, q)) < 1e-300) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t i = 0; i < n; ++i) {
          const double mip = m(i, p), miq = m(i, q);
          m(i, p) = c * mip - s * miq;
          m(i, q) = s * mip + c * miq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double mpi = m(p, i), mqi = m(q, i);
          m(p, i) = c * mpi - s * mqi;
          m(q, i) = s * mpi + c * mqi;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  SymmetricEigen e;
  e.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) e.values[i] = m(i, i);
  e.vectors = std::move(v);
  return e;
}

RealMatrix psd_sqrt(const RealMatrix& r) {
  if (r.rows() != r.cols()) throw DimensionMismatch("psd_sqrt: not square");
  const std::size_t n = r.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(r(i, j) - r(j, i)) > 1e-12)
        throw NotSymmetric("psd_sqrt: asymmetric input");

  SymmetricEigen e = symmetric_eigen(r);
  for (double& lam : e.values) {
    if (lam < -1e-8) throw NotPSD("psd_sqrt: negative eigenvalue");
    if (lam < 0.0) lam = 0.0;
  }

  RealMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += e.vectors(i, k) * std::sqrt(e.values[k]) * e.vectors(j, k);
      s(i, j) = acc;
    }
  // Exact symmetry regardless of rounding in the accumulation order.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (s(i, j) + s(j, i));
      s(i, j) = s(j, i) = avg;
    }
  return s;
}

RealModel complex_to_real_model(const ComplexMatrix& h, const ComplexVector& y) {
  if (h.rows() != y.size()) throw DimensionMismatch("complex_to_real_model shape");
  const std::size_t n = h.rows(), k = h.cols();
  RealModel out;
  out.H = RealMatrix(2 * n, 2 * k);
  out.y = RealVector(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      out.H(i, j) = h(i, j).real();
      out.H(i, j + k) = -h(i, j).imag();
      out.H(i + n, j) = h(i, j).imag();
      out.H(i + n, j + k) = h(i, j).real();
    }
    out.y[i] = y[i].real();
    out.y[i + n] = y[i].imag();
  }
  return out;
}

GramData gram_and_matched_filter(const RealMatrix& hr, const RealVector& yr) {
  if (hr.rows() != yr.size()) throw DimensionMismatch("gram shape");
  GramData g;
  g.G = transpose_times(hr, hr);
  // Symmetrize exactly; the Gram matrix is symmetric by construction.
  for (std::size_t i = 0; i < g.G.rows(); ++i)
    for (std::size_t j = i + 1; j < g.G.cols(); ++j) g.G(j, i) = g.G(i, j);
  g.z = transpose_times(hr, yr);
  return g;
}

}  // namespace kingsd
