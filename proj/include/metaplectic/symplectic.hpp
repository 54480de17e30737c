#pragma once

// Symplectic matrices over R^{2n}: generators, group operations, seeded
// sampling, and the catalog of time-frequency representation matrices.

#include <optional>
#include <string>

#include "metaplectic/matrix.hpp"
#include "metaplectic/random.hpp"

namespace metaplectic {

/// The standard skew-symmetric matrix [[0, I], [-I, 0]].
inline RealMatrix standard_j_matrix(int n) {
  RealMatrix j = RealMatrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = RealMatrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
  return j;
}

/// Residual ||m^t J m - J||_F and the verdict residual <= tol * side.
inline std::pair<bool, double> is_symplectic(const RealMatrix& m, double tol = 1e-10) {
  if (m.rows() != m.cols()) fail(Err::OddDimension, "matrix is not square");
  if (m.rows() % 2 != 0) fail(Err::OddDimension, "matrix side is odd");
  int n = static_cast<int>(m.rows()) / 2;
  RealMatrix j = standard_j_matrix(n);
  double residual = (m.transpose() * j * m - j).norm();
  return {residual <= tol * static_cast<double>(2 * n), residual};
}

class SymplecticMatrix {
 public:
  static constexpr double kDefaultTol = 1e-10;

  explicit SymplecticMatrix(RealMatrix m, double tol = kDefaultTol) : m_(std::move(m)) {
    auto [ok, residual] = is_symplectic(m_, tol);
    if (!ok) fail(Err::NotSymplectic, "residual " + std::to_string(residual));
    n_ = static_cast<int>(m_.rows()) / 2;
  }

  int half_dim() const { return n_; }
  const RealMatrix& matrix() const { return m_; }

  RealMatrix block_a() const { return m_.topLeftCorner(n_, n_); }
  RealMatrix block_b() const { return m_.topRightCorner(n_, n_); }
  RealMatrix block_c() const { return m_.bottomLeftCorner(n_, n_); }
  RealMatrix block_d() const { return m_.bottomRightCorner(n_, n_); }

  SymplecticMatrix operator*(const SymplecticMatrix& rhs) const {
    if (n_ != rhs.n_) fail(Err::DimensionMismatch, "half dimensions differ");
    return SymplecticMatrix(m_ * rhs.m_, 1e-8);
  }

 private:
  RealMatrix m_;
  int n_ = 0;
};

inline SymplecticMatrix standard_j(int n) {
  if (n < 1) fail(Err::BadParam, "n must be >= 1");
  return SymplecticMatrix(standard_j_matrix(n));
}

/// V_Q = [[I, 0], [Q, I]] for symmetric Q.
inline SymplecticMatrix gen_vq(const RealMatrix& q) {
  if (q.rows() != q.cols()) fail(Err::NotSymmetric, "Q is not square");
  double scale = std::max(q.norm(), 1e-300);
  if ((q - q.transpose()).norm() > 1e-10 * scale) fail(Err::NotSymmetric, "Q is not symmetric");
  int n = static_cast<int>(q.rows());
  RealMatrix m = RealMatrix::Identity(2 * n, 2 * n);
  m.bottomLeftCorner(n, n) = symmetrized(q);
  return SymplecticMatrix(std::move(m));
}

/// D_L = [[L, 0], [0, L^{-t}]] for invertible L.
inline SymplecticMatrix gen_dl(const RealMatrix& l) {
  if (l.rows() != l.cols()) fail(Err::Singular, "L is not square");
  if (min_singular_value(l) <= 1e-12) fail(Err::Singular, "L is numerically singular");
  int n = static_cast<int>(l.rows());
  RealMatrix m = RealMatrix::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n) = l;
  m.bottomRightCorner(n, n) = l.inverse().transpose();
  return SymplecticMatrix(std::move(m), 1e-8);
}

/// R_{A+iB} = [[A, B], [-B, A]] for unitary A+iB.
inline SymplecticMatrix gen_ru(const ComplexMatrix& u) {
  if (!is_unitary(u, 1e-10)) fail(Err::NotUnitary, "U*U - I exceeds tolerance");
  int n = static_cast<int>(u.rows());
  RealMatrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = u.real();
  m.topRightCorner(n, n) = u.imag();
  m.bottomLeftCorner(n, n) = -u.imag();
  m.bottomRightCorner(n, n) = u.real();
  return SymplecticMatrix(std::move(m));
}

inline SymplecticMatrix gen_ru_scalar(Complex tau, int n) {
  return gen_ru(tau * ComplexMatrix::Identity(n, n));
}

/// Closed-form inverse A^{-1} = -J A^t J.
inline SymplecticMatrix symplectic_inverse(const SymplecticMatrix& a) {
  RealMatrix j = standard_j_matrix(a.half_dim());
  return SymplecticMatrix(-j * a.matrix().transpose() * j, 1e-8);
}

/// Embedding Sp(2n) x Sp(2n) -> Sp(4n) that interleaves the blocks; on the
/// generators it realizes (V_{Q1},V_{Q2}) -> V_{diag(Q1,Q2)}, and likewise
/// for D and R.
inline SymplecticMatrix embed_pair(const SymplecticMatrix& a1, const SymplecticMatrix& a2) {
  if (a1.half_dim() != a2.half_dim()) fail(Err::DimensionMismatch, "half dimensions differ");
  int n = a1.half_dim();
  auto put = [n](RealMatrix& dst, int bi, int bj, const RealMatrix& m1, const RealMatrix& m2) {
    dst.block(2 * n * bi, 2 * n * bj, n, n) = m1;
    dst.block(2 * n * bi + n, 2 * n * bj + n, n, n) = m2;
  };
  RealMatrix m = RealMatrix::Zero(4 * n, 4 * n);
  put(m, 0, 0, a1.block_a(), a2.block_a());
  put(m, 0, 1, a1.block_b(), a2.block_b());
  put(m, 1, 0, a1.block_c(), a2.block_c());
  put(m, 1, 1, a1.block_d(), a2.block_d());
  return SymplecticMatrix(std::move(m), 1e-8);
}

/// Random element V_Q D_L R_U, deterministic per seed.
inline SymplecticMatrix random_symplectic(int n, std::uint64_t seed) {
  if (n < 1) fail(Err::BadParam, "n must be >= 1");
  Rng rng(seed);
  RealMatrix q = random_symmetric(n, rng);
  RealMatrix l = random_invertible(n, rng);
  ComplexMatrix u = random_unitary(n, rng);
  return gen_vq(q) * gen_dl(l) * gen_ru(u);
}

// ---------------------------------------------------------------------------
// Catalog of deciding examples. All matrices are in Sp(4d, R), written with
// d x d blocks so they exist for every d >= 1.

enum class Catalog { Stft, Ambiguity, TauWigner, Fourier, Chirp, Dilation };

inline Catalog catalog_from_name(const std::string& name) {
  if (name == "stft") return Catalog::Stft;
  if (name == "ambiguity") return Catalog::Ambiguity;
  if (name == "tau_wigner") return Catalog::TauWigner;
  if (name == "fourier") return Catalog::Fourier;
  if (name == "chirp") return Catalog::Chirp;
  if (name == "dilation") return Catalog::Dilation;
  fail(Err::UnknownName, "unknown catalog name '" + name + "'");
}

inline const char* catalog_name(Catalog c) {
  switch (c) {
    case Catalog::Stft: return "stft";
    case Catalog::Ambiguity: return "ambiguity";
    case Catalog::TauWigner: return "tau_wigner";
    case Catalog::Fourier: return "fourier";
    case Catalog::Chirp: return "chirp";
    case Catalog::Dilation: return "dilation";
  }
  return "?";
}

struct CatalogParams {
  std::optional<double> tau;     // tau_wigner
  std::optional<RealMatrix> q;   // chirp, 2d x 2d symmetric
  std::optional<RealMatrix> l;   // dilation, 2d x 2d invertible
};

namespace detail {

// A_stft = R_{diag(I,iI)} D_{L_stft}, L_stft = [[I,-I],[I,0]].
inline RealMatrix stft_matrix(int d) {
  RealMatrix i = RealMatrix::Identity(d, d);
  RealMatrix m = RealMatrix::Zero(4 * d, 4 * d);
  m.block(0, 0, d, d) = i;
  m.block(0, d, d, d) = -i;
  m.block(d, 2 * d, d, d) = i;
  m.block(d, 3 * d, d, d) = i;
  m.block(2 * d, 3 * d, d, d) = -i;
  m.block(3 * d, 0, d, d) = -i;
  return m;
}

inline RealMatrix tau_wigner_matrix(int d, double tau) {
  RealMatrix i = RealMatrix::Identity(d, d);
  RealMatrix m = RealMatrix::Zero(4 * d, 4 * d);
  m.block(0, 0, d, d) = (1.0 - tau) * i;
  m.block(0, d, d, d) = tau * i;
  m.block(d, 2 * d, d, d) = tau * i;
  m.block(d, 3 * d, d, d) = -(1.0 - tau) * i;
  m.block(2 * d, 2 * d, d, d) = i;
  m.block(2 * d, 3 * d, d, d) = i;
  m.block(3 * d, 0, d, d) = -i;
  m.block(3 * d, d, d, d) = i;
  return m;
}

inline RealMatrix cross_block(int d, double s) {
  RealMatrix k = RealMatrix::Zero(2 * d, 2 * d);
  k.topRightCorner(d, d) = s * RealMatrix::Identity(d, d);
  k.bottomLeftCorner(d, d) = s * RealMatrix::Identity(d, d);
  return k;
}

}  // namespace detail

/// Returns the named matrix in Sp(4d, R), i.e. half_dim = 2d.
inline SymplecticMatrix catalog(Catalog name, int d, const CatalogParams& params = {}) {
  if (d < 1) fail(Err::BadParam, "d must be >= 1");
  switch (name) {
    case Catalog::Stft:
      return SymplecticMatrix(detail::stft_matrix(d));
    case Catalog::Ambiguity:
      return gen_vq(detail::cross_block(d, 0.5)) * SymplecticMatrix(detail::stft_matrix(d));
    case Catalog::TauWigner: {
      if (!params.tau) fail(Err::BadParam, "tau_wigner needs a tau parameter");
      return SymplecticMatrix(detail::tau_wigner_matrix(d, *params.tau));
    }
    case Catalog::Fourier:
      return standard_j(2 * d);
    case Catalog::Chirp: {
      RealMatrix q = params.q ? *params.q : RealMatrix::Identity(2 * d, 2 * d);
      if (q.rows() != 2 * d) fail(Err::BadParam, "chirp Q must be 2d x 2d");
      return gen_vq(q);
    }
    case Catalog::Dilation: {
      RealMatrix l = params.l ? *params.l : 2.0 * RealMatrix::Identity(2 * d, 2 * d);
      if (l.rows() != 2 * d) fail(Err::BadParam, "dilation L must be 2d x 2d");
      return gen_dl(l);
    }
  }
  fail(Err::UnknownName, "unhandled catalog entry");
}

}  // namespace metaplectic
