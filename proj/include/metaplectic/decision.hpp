#pragma once

// Benedicks uncertainty-principle verdicts for metaplectic time-frequency
// representations. Input is a symplectic matrix in Sp(4d, R); the decision
// reads off the block structure of U^t U for the pre-Iwasawa rotation factor.

#include "metaplectic/decompositions.hpp"

namespace metaplectic {

enum class VerdictKind { Sesquilinear, Quadratic };

struct Verdict {
  VerdictKind kind = VerdictKind::Sesquilinear;
  bool holds = false;
  ComplexMatrix deciding_product;  // U^t U, 2d x 2d
  double off_block_norm = 0.0;     // relative Frobenius norm of the off-diagonal blocks
  double conj_mismatch = 0.0;      // relative ||M_22 - conj(M_11)||_F
  double tolerance = 0.0;
  bool borderline = false;
};

inline ComplexMatrix deciding_product(const SymplecticMatrix& a) {
  PreIwasawaFactors pi = pre_iwasawa(a);
  return pi.u.transpose() * pi.u;
}

namespace detail {

inline Verdict decide(const SymplecticMatrix& a, VerdictKind kind, double tol) {
  if (a.half_dim() % 2 != 0)
    fail(Err::HalfDimOdd, "no d x d block split: half dimension is odd");
  const int d = a.half_dim() / 2;
  Verdict v;
  v.kind = kind;
  v.tolerance = tol;
  v.deciding_product = deciding_product(a);
  const ComplexMatrix& m = v.deciding_product;
  double scale = m.norm();
  v.off_block_norm = off_block_frobenius(m) / scale;
  v.conj_mismatch =
      (m.bottomRightCorner(d, d) - m.topLeftCorner(d, d).conjugate()).norm() / scale;
  double margin;
  if (kind == VerdictKind::Sesquilinear) {
    v.holds = v.off_block_norm > tol;
    margin = v.off_block_norm;
  } else {
    v.holds = v.off_block_norm > tol || v.conj_mismatch > tol;
    margin = std::max(v.off_block_norm, v.conj_mismatch);
  }
  v.borderline = margin >= tol / 10.0 && margin <= tol * 10.0;
  return v;
}

}  // namespace detail

inline Verdict decide_sesquilinear(const SymplecticMatrix& a, double tol = 1e-8) {
  return detail::decide(a, VerdictKind::Sesquilinear, tol);
}

inline Verdict decide_quadratic(const SymplecticMatrix& a, double tol = 1e-8) {
  return detail::decide(a, VerdictKind::Quadratic, tol);
}

// ---------------------------------------------------------------------------
// Witness recipe: the data needed to build compactly supported
// counterexamples when the uncertainty principle fails. Reconstructs the
// input as V_q D_l D_w R_{diag(delta1, delta2)}.

struct WitnessRecipe {
  RealMatrix q;
  RealMatrix l;
  RealMatrix w;
  ComplexMatrix delta1;
  ComplexMatrix delta2;

  SymplecticMatrix reconstruct() const {
    int d = static_cast<int>(delta1.rows());
    ComplexMatrix diag = ComplexMatrix::Zero(2 * d, 2 * d);
    diag.topLeftCorner(d, d) = delta1;
    diag.bottomRightCorner(d, d) = delta2;
    return gen_vq(q) * gen_dl(l) * gen_dl(w) * gen_ru(diag);
  }
};

inline WitnessRecipe witness_recipe(const SymplecticMatrix& a, VerdictKind mode,
                                    double tol = 1e-8) {
  Verdict v = detail::decide(a, mode, tol);
  if (v.holds)
    fail(Err::VerdictHolds, "the uncertainty principle holds; no witness exists");
  PreIwasawaFactors pi = pre_iwasawa(a);
  WitnessRecipe out;
  out.q = pi.q;
  out.l = pi.l;
  if (mode == VerdictKind::Sesquilinear) {
    BlockFactors bf = block_factorize_unitary(pi.u, tol);
    out.w = bf.w;
    out.delta1 = bf.delta1;
    out.delta2 = bf.delta2;
  } else {
    ConjugatePairFactors cp = conjugate_pair_factorize(pi.u, tol);
    out.w = cp.w;
    out.delta1 = cp.delta;
    out.delta2 = cp.delta.conjugate();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Invariance checks: the verdict ignores left chirp/dilation factors, and the
// off-block norm is unchanged by right rotations R_{tau I}.

inline bool verdict_invariance_check(const SymplecticMatrix& a, std::uint64_t seed,
                                     int draws = 8, double tol = 1e-8) {
  Verdict base = decide_sesquilinear(a);
  Rng rng(seed);
  const int n = a.half_dim();
  for (int i = 0; i < draws; ++i) {
    RealMatrix q = random_symmetric(n, rng);
    RealMatrix l = random_invertible(n, rng);
    Verdict v = decide_sesquilinear(gen_vq(q) * gen_dl(l) * a);
    if (v.holds != base.holds) return false;
    if (std::abs(v.off_block_norm - base.off_block_norm) > tol) return false;
  }
  for (int i = 0; i < draws; ++i) {
    Complex tau = std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
    Verdict v = decide_sesquilinear(a * gen_ru_scalar(tau, n));
    if (std::abs(v.off_block_norm - base.off_block_norm) > tol) return false;
  }
  return true;
}

}  // namespace metaplectic
