#pragma once

// Matrix factorizations behind the uncertainty dichotomy: pre-Iwasawa,
// free-symplectic, joint real SVD of unitaries, tau-rotation, and the
// constructive block factorizations for witness construction.

#include <algorithm>
#include <vector>

#include "metaplectic/matrix.hpp"
#include "metaplectic/symplectic.hpp"

namespace metaplectic {

// ---------------------------------------------------------------------------
// Pre-Iwasawa decomposition A = V_Q D_L R_U with L symmetric positive
// definite (which makes the factors unique).

struct PreIwasawaFactors {
  RealMatrix q;      // symmetric
  RealMatrix l;      // symmetric positive definite
  ComplexMatrix u;   // unitary

  SymplecticMatrix reconstruct() const { return gen_vq(q) * gen_dl(l) * gen_ru(u); }
};

inline PreIwasawaFactors pre_iwasawa(const SymplecticMatrix& sp) {
  const RealMatrix a = sp.block_a();
  const RealMatrix b = sp.block_b();
  const RealMatrix c = sp.block_c();
  const RealMatrix d = sp.block_d();
  RealMatrix s = a * a.transpose() + b * b.transpose();
  PreIwasawaFactors out;
  try {
    out.l = detail::spd_power(s, 0.5);
    RealMatrix linv = detail::spd_power(s, -0.5);
    out.u = linv * (a + Complex(0, 1) * b);
    out.q = symmetrized((c * a.transpose() + d * b.transpose()) * detail::spd_power(s, -1.0));
  } catch (const Error& e) {
    if (e.code() == Err::NotSPD) fail(Err::NumericalBreakdown, "AA^t + BB^t failed the SPD check");
    throw;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Free factorization A = V_{DB^{-1}} D_B J V_{B^{-1}A} for invertible B.

struct FreeFactors {
  RealMatrix q_out;  // D B^{-1}, symmetric
  RealMatrix b;      // invertible
  RealMatrix p;      // B^{-1} A, symmetric

  SymplecticMatrix reconstruct() const {
    int n = static_cast<int>(b.rows());
    return gen_vq(q_out) * gen_dl(b) * standard_j(n) * gen_vq(p);
  }
};

inline FreeFactors free_factorize(const SymplecticMatrix& sp) {
  const RealMatrix b = sp.block_b();
  double scale = b.norm();
  if (min_singular_value(b) <= 1e-10 * std::max(scale, 1e-300))
    fail(Err::NotFree, "upper-right block is singular");
  RealMatrix binv = b.inverse();
  RealMatrix q_raw = sp.block_d() * binv;
  RealMatrix p_raw = binv * sp.block_a();
  if ((q_raw - q_raw.transpose()).norm() > 1e-6 * std::max(q_raw.norm(), 1.0) ||
      (p_raw - p_raw.transpose()).norm() > 1e-6 * std::max(p_raw.norm(), 1.0))
    fail(Err::NumericalBreakdown, "free factors lost symmetry");
  return FreeFactors{symmetrized(q_raw), b, symmetrized(p_raw)};
}

// ---------------------------------------------------------------------------
// Joint real SVD U = W Sigma V^t with W, V real orthogonal and Sigma diagonal
// unitary. Construction: M = U^t U is unitary and complex symmetric, so
// Re(M) and Im(M) are commuting real symmetric matrices; diagonalize Re(M),
// refine inside eigenvalue clusters with Im(M), take the principal square
// root of the resulting diagonal, and recover W = U V Sigma^{-1}.

struct JointSvd {
  RealMatrix w;
  ComplexVector sigma;  // unit modulus entries
  RealMatrix v;

  ComplexMatrix reconstruct() const {
    return w.cast<Complex>() * sigma.asDiagonal() * v.transpose().cast<Complex>();
  }
};

inline JointSvd joint_svd(const ComplexMatrix& u, double cluster_tol = 1e-8) {
  if (!is_unitary(u, 1e-9)) fail(Err::NotUnitary, "input is not unitary");
  const int n = static_cast<int>(u.rows());
  ComplexMatrix m = u.transpose() * u;
  RealMatrix re = symmetrized(m.real());
  RealMatrix im = symmetrized(m.imag());

  SymEig stage1 = sym_eig(re);
  RealMatrix v = stage1.vectors;

  // Cluster threshold is absolute: the spectrum of Re(U^tU) lies in [-1, 1].
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && stage1.values(end - 1) - stage1.values(end) < cluster_tol) ++end;
    if (end - start > 1) {
      RealMatrix vc = v.middleCols(start, end - start);
      SymEig stage2 = sym_eig(symmetrized(vc.transpose() * im * vc));
      v.middleCols(start, end - start) = vc * stage2.vectors;
    }
    start = end;
  }
  detail::fix_column_signs(v);

  ComplexMatrix diag = v.transpose().cast<Complex>() * m * v.cast<Complex>();
  JointSvd out;
  out.v = v;
  out.sigma = ComplexVector(n);
  for (int k = 0; k < n; ++k) {
    Complex d = diag(k, k);
    double a = std::abs(d);
    if (a < 0.5) fail(Err::NumericalBreakdown, "diagonal of U^tU lost unit modulus");
    d /= a;
    // Principal branch: argument of sigma in (-pi/2, pi/2].
    out.sigma(k) = std::polar(1.0, 0.5 * std::arg(d));
  }

  ComplexMatrix w = u * v.cast<Complex>() * out.sigma.conjugate().asDiagonal();
  if (w.imag().cwiseAbs().maxCoeff() > 1e-8)
    fail(Err::RealityCheckFailed, "W has a non-negligible imaginary part (cluster threshold?)");
  out.w = w.real();
  if ((out.w.transpose() * out.w - RealMatrix::Identity(n, n)).norm() > 1e-8)
    fail(Err::RealityCheckFailed, "W failed the orthogonality check");
  return out;
}

// ---------------------------------------------------------------------------
// tau-rotation: for unitary U, Im(tau U) is invertible for all but at most
// 2*side unit-modulus tau. Picks the tau maximizing sigma_min(Im(tau U)).

struct TauChoice {
  Complex tau;
  std::vector<Complex> exceptional;
  double margin = 0.0;  // sigma_min(Im(tau U)) at the chosen tau
};

namespace detail {

inline double im_margin(const ComplexMatrix& u, double theta) {
  ComplexMatrix tu = std::polar(1.0, theta) * u;
  return min_singular_value(RealMatrix(tu.imag()));
}

}  // namespace detail

inline TauChoice tau_rotate(const ComplexMatrix& u) {
  JointSvd js = joint_svd(u);
  const int n = static_cast<int>(u.rows());

  TauChoice out;
  auto push_unique = [&](Complex t) {
    for (const Complex& e : out.exceptional)
      if (std::abs(std::arg(t * std::conj(e))) < 1e-10) return;
    out.exceptional.push_back(t);
  };
  for (int k = 0; k < n; ++k) {
    Complex c = std::conj(js.sigma(k));
    push_unique(c);
    push_unique(-c);
  }

  constexpr int kGrid = 256;
  double best_theta = 0.0, best_val = -1.0;
  for (int j = 0; j < kGrid; ++j) {
    double theta = 2.0 * M_PI * j / kGrid;
    double val = detail::im_margin(u, theta);
    if (val > best_val) {
      best_val = val;
      best_theta = theta;
    }
  }

  // Golden-section refinement of the bracketing interval.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_theta - 2.0 * M_PI / kGrid;
  double hi = best_theta + 2.0 * M_PI / kGrid;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = detail::im_margin(u, x1), f2 = detail::im_margin(u, x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = detail::im_margin(u, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = detail::im_margin(u, x1);
    }
  }
  double theta = 0.5 * (lo + hi);
  out.tau = std::polar(1.0, theta);
  out.margin = detail::im_margin(u, theta);
  if (out.margin < best_val) {
    out.tau = std::polar(1.0, best_theta);
    out.margin = best_val;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Constructive factorization U = W diag(Delta_1, Delta_2) for 2d x 2d unitary
// U with block-diagonal U^t U: rotate by tau so Im(tau U) is invertible, form
// the symmetric P = B^{-1} A (block-diagonal exactly when U^t U is), rebuild
// the canonical unitary U' = (I+P^2)^{-1/2} (P + iI) sharing that P, split U'
// blockwise with the joint SVD, then undo tau.

struct BlockFactors {
  RealMatrix w;         // orthogonal 2d x 2d
  ComplexMatrix delta1;  // unitary d x d
  ComplexMatrix delta2;  // unitary d x d

  ComplexMatrix reconstruct() const {
    int d = static_cast<int>(delta1.rows());
    ComplexMatrix diag = ComplexMatrix::Zero(2 * d, 2 * d);
    diag.topLeftCorner(d, d) = delta1;
    diag.bottomRightCorner(d, d) = delta2;
    return w.cast<Complex>() * diag;
  }
};

inline double off_block_frobenius(const ComplexMatrix& m) {
  int d = static_cast<int>(m.rows()) / 2;
  return std::sqrt(m.topRightCorner(d, d).squaredNorm() + m.bottomLeftCorner(d, d).squaredNorm());
}

inline BlockFactors block_factorize_unitary(const ComplexMatrix& u, double tol = 1e-8) {
  if (u.rows() != u.cols() || u.rows() % 2 != 0)
    fail(Err::DimensionMismatch, "input must be 2d x 2d");
  const int d = static_cast<int>(u.rows()) / 2;
  ComplexMatrix m = u.transpose() * u;
  if (off_block_frobenius(m) > tol * m.norm())
    fail(Err::NotBlockDiagonal, "U^t U is not block-diagonal");

  TauChoice tc = tau_rotate(u);
  ComplexMatrix tu = tc.tau * u;
  RealMatrix a = tu.real(), b = tu.imag();
  RealMatrix p = b.inverse() * a;
  if ((p - p.transpose()).norm() > 1e-6 * std::max(p.norm(), 1.0))
    fail(Err::NumericalBreakdown, "P = B^{-1}A lost symmetry");
  p = symmetrized(p);
  double p_off = std::sqrt(p.topRightCorner(d, d).squaredNorm() + p.bottomLeftCorner(d, d).squaredNorm());
  if (p_off > 1e-6 * std::max(p.norm(), 1.0))
    fail(Err::NotBlockDiagonal, "B^{-1}A is not block-diagonal");
  p.topRightCorner(d, d).setZero();
  p.bottomLeftCorner(d, d).setZero();

  RealMatrix ip2_inv_sqrt = detail::spd_power(RealMatrix::Identity(2 * d, 2 * d) + p * p, -0.5);
  ComplexMatrix u_prime = ip2_inv_sqrt.cast<Complex>() * (p.cast<Complex>() + Complex(0, 1) * ComplexMatrix::Identity(2 * d, 2 * d));
  RealMatrix w_prime = b * detail::spd_power(RealMatrix::Identity(2 * d, 2 * d) + p * p, 0.5);
  if ((w_prime.transpose() * w_prime - RealMatrix::Identity(2 * d, 2 * d)).norm() > 1e-6)
    fail(Err::NumericalBreakdown, "W' = B (Im U')^{-1} is not orthogonal");

  JointSvd js1 = joint_svd(u_prime.topLeftCorner(d, d));
  JointSvd js2 = joint_svd(u_prime.bottomRightCorner(d, d));

  BlockFactors out;
  out.w = RealMatrix::Zero(2 * d, 2 * d);
  RealMatrix wdiag = RealMatrix::Zero(2 * d, 2 * d);
  wdiag.topLeftCorner(d, d) = js1.w;
  wdiag.bottomRightCorner(d, d) = js2.w;
  out.w = w_prime * wdiag;
  Complex undo = std::conj(tc.tau);
  out.delta1 = undo * ComplexMatrix(js1.sigma.asDiagonal()) * js1.v.transpose().cast<Complex>();
  out.delta2 = undo * ComplexMatrix(js2.sigma.asDiagonal()) * js2.v.transpose().cast<Complex>();
  return out;
}

// ---------------------------------------------------------------------------
// Conjugate-pair factorization U = W diag(Delta, conj(Delta)) for unitary U
// with U^t U = diag(D, conj(D)).

struct ConjugatePairFactors {
  RealMatrix w;
  ComplexMatrix delta;

  ComplexMatrix reconstruct() const {
    int d = static_cast<int>(delta.rows());
    ComplexMatrix diag = ComplexMatrix::Zero(2 * d, 2 * d);
    diag.topLeftCorner(d, d) = delta;
    diag.bottomRightCorner(d, d) = delta.conjugate();
    return w.cast<Complex>() * diag;
  }
};

inline ConjugatePairFactors conjugate_pair_factorize(const ComplexMatrix& u, double tol = 1e-8) {
  if (u.rows() != u.cols() || u.rows() % 2 != 0)
    fail(Err::DimensionMismatch, "input must be 2d x 2d");
  const int d = static_cast<int>(u.rows()) / 2;
  ComplexMatrix m = u.transpose() * u;
  double scale = m.norm();
  if (off_block_frobenius(m) > tol * scale)
    fail(Err::NotConjugatePair, "U^t U is not block-diagonal");
  if ((m.bottomRightCorner(d, d) - m.topLeftCorner(d, d).conjugate()).norm() > tol * scale)
    fail(Err::NotConjugatePair, "lower block of U^t U is not the conjugate of the upper block");

  BlockFactors bf = block_factorize_unitary(u, tol);
  ComplexMatrix w0 = bf.delta1 * bf.delta2.transpose();
  if (w0.imag().cwiseAbs().maxCoeff() > 1e-8)
    fail(Err::RealityCheckFailed, "Delta_1 Delta_2^t is not real");
  RealMatrix w0r = w0.real();

  ConjugatePairFactors out;
  out.w = bf.w;
  out.w.rightCols(d) = bf.w.rightCols(d) * w0r.transpose();
  out.delta = bf.delta1;
  return out;
}

}  // namespace metaplectic
