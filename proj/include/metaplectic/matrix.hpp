#pragma once

// Dense real/complex matrix primitives shared by all modules. Thin wrappers
// around Eigen solvers with deterministic ordering and sign conventions.

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <vector>

#include "metaplectic/errors.hpp"

namespace metaplectic {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

inline double frob(const RealMatrix& m) { return m.norm(); }
inline double frob(const ComplexMatrix& m) { return m.norm(); }

template <typename A, typename B>
double rel_frob(const A& lhs, const B& rhs) {
  double denom = rhs.norm();
  return denom == 0.0 ? (lhs - rhs).norm() : (lhs - rhs).norm() / denom;
}

inline RealMatrix symmetrized(const RealMatrix& m) { return 0.5 * (m + m.transpose()); }

struct SymEig {
  RealVector values;   // descending
  RealMatrix vectors;  // orthogonal, columns match values
};

namespace detail {

// Deterministic sign convention: first component of each column with
// magnitude above 1e-12 is made positive.
inline void fix_column_signs(RealMatrix& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      double x = v(r, c);
      if (std::abs(x) > 1e-12) {
        if (x < 0) v.col(c) = -v.col(c);
        break;
      }
    }
  }
}

}  // namespace detail

/// Symmetric eigendecomposition, eigenvalues descending, deterministic output.
inline SymEig sym_eig(const RealMatrix& m, double tol = 1e-10) {
  if (m.rows() != m.cols()) fail(Err::NotSymmetric, "matrix is not square");
  double scale = frob(m);
  if ((m - m.transpose()).norm() > tol * std::max(scale, 1e-300))
    fail(Err::NotSymmetric, "asymmetry exceeds tolerance");
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(symmetrized(m));
  if (es.info() != Eigen::Success) fail(Err::NoConvergence, "sym_eig iteration stalled");
  const Eigen::Index n = m.rows();
  // Descending order, ties keeping the solver's original column order.
  std::vector<Eigen::Index> order(n);
  for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return es.eigenvalues()(a) > es.eigenvalues()(b);
  });
  SymEig out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = es.eigenvalues()(order[i]);
    out.vectors.col(i) = es.eigenvectors().col(order[i]);
  }
  detail::fix_column_signs(out.vectors);
  return out;
}

namespace detail {

// Eigenvalue power of an SPD matrix with the clamping rule: eigenvalues in
// [-1e-13*lambda_max, 0] are lifted to 1e-13*lambda_max, anything lower is an
// error.
inline RealMatrix spd_power(const RealMatrix& m, double p) {
  SymEig es = sym_eig(m);
  double lmax = es.values(0);
  if (!(lmax > 0)) fail(Err::NotSPD, "largest eigenvalue is not positive");
  double floor_ = 1e-13 * lmax;
  RealVector lam = es.values;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -floor_) fail(Err::NotSPD, "negative eigenvalue beyond clamping threshold");
    if (lam(i) < floor_) lam(i) = floor_;
    lam(i) = std::pow(lam(i), p);
  }
  return symmetrized(es.vectors * lam.asDiagonal() * es.vectors.transpose());
}

}  // namespace detail

/// Symmetric positive definite square root.
inline RealMatrix spd_sqrt(const RealMatrix& m) { return detail::spd_power(m, 0.5); }

struct Svd {
  RealMatrix u;
  RealVector s;  // nonnegative, descending
  RealMatrix v;
};

inline Svd svd_real(const RealMatrix& m) {
  if (m.isZero(0.0)) {
    Svd out;
    out.u = RealMatrix::Identity(m.rows(), m.rows());
    out.s = RealVector::Zero(std::min(m.rows(), m.cols()));
    out.v = RealMatrix::Identity(m.cols(), m.cols());
    return out;
  }
  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return Svd{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

inline double min_singular_value(const RealMatrix& m) {
  if (m.rows() != m.cols()) fail(Err::DimensionMismatch, "min_singular_value needs a square matrix");
  Eigen::JacobiSVD<RealMatrix> svd(m);
  return svd.singularValues()(m.rows() - 1);
}

inline double min_singular_value(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) fail(Err::DimensionMismatch, "min_singular_value needs a square matrix");
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(m.rows() - 1);
}

inline bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  ComplexMatrix g = u.adjoint() * u;
  return (g - ComplexMatrix::Identity(u.rows(), u.cols())).norm() < tol;
}

}  // namespace metaplectic
