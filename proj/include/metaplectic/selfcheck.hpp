#pragma once

// Reduced-size property suites runnable from the CLI. Mirrors the invariants
// the full test suite enforces, at sizes that finish in a few seconds.

#include <functional>
#include <sstream>
#include <vector>

#include "metaplectic/grid.hpp"
#include "metaplectic/io.hpp"

namespace metaplectic {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string note;
};

namespace selfcheck_detail {

inline bool catalog_pre_iwasawa() {
  PreIwasawaFactors pi = pre_iwasawa(catalog(Catalog::Stft, 1));
  RealMatrix q_expect(2, 2);
  q_expect << 0, -0.5, -0.5, 0;
  ComplexMatrix u_expect(2, 2);
  double r = 1.0 / std::sqrt(2.0);
  u_expect << Complex(r, 0), Complex(-r, 0), Complex(0, r), Complex(0, r);
  return (pi.q - q_expect).norm() < 1e-12 &&
         (pi.l - std::sqrt(2.0) * RealMatrix::Identity(2, 2)).norm() < 1e-12 &&
         (pi.u - u_expect).norm() < 1e-12;
}

inline bool verdict_table() {
  bool ok = decide_sesquilinear(catalog(Catalog::Stft, 1)).holds;
  ok = ok && decide_sesquilinear(catalog(Catalog::Ambiguity, 1)).holds;
  ok = ok && !decide_sesquilinear(catalog(Catalog::Fourier, 1)).holds;
  ok = ok && !decide_sesquilinear(catalog(Catalog::Chirp, 1)).holds;
  ok = ok && !decide_sesquilinear(catalog(Catalog::Dilation, 1)).holds;
  for (double tau : {0.0, 1.0}) {
    SymplecticMatrix a = catalog(Catalog::TauWigner, 1, {.tau = tau});
    ok = ok && !decide_sesquilinear(a).holds && decide_quadratic(a).holds;
  }
  for (double tau : {0.25, 0.5, 0.75})
    ok = ok && decide_sesquilinear(catalog(Catalog::TauWigner, 1, {.tau = tau})).holds;
  ComplexMatrix rot = ComplexMatrix::Zero(2, 2);
  rot(0, 0) = std::polar(1.0, 0.4);
  rot(1, 1) = std::polar(1.0, -0.4);
  ok = ok && !decide_quadratic(gen_ru(rot)).holds;
  return ok;
}

inline bool pre_iwasawa_reconstruction(std::uint64_t seed) {
  for (int i = 0; i < 100; ++i) {
    int n = std::array<int, 3>{1, 2, 4}[i % 3];
    SymplecticMatrix a = random_symplectic(n, seed + i);
    PreIwasawaFactors pi = pre_iwasawa(a);
    if (rel_frob(pi.reconstruct().matrix(), a.matrix()) > 1e-9) return false;
    if ((pi.q - pi.q.transpose()).norm() > 1e-10 * std::max(1.0, pi.q.norm())) return false;
    if (!is_unitary(pi.u, 1e-10)) return false;
  }
  return true;
}

inline bool joint_svd_invariants(std::uint64_t seed) {
  Rng rng(seed ^ 0x5eed);
  for (int i = 0; i < 100; ++i) {
    int m = 2 + static_cast<int>(rng.next_u64() % 11);
    ComplexMatrix u = random_unitary(m, rng);
    JointSvd js = joint_svd(u);
    if ((js.reconstruct() - u).norm() > 1e-10) return false;
    for (int k = 0; k < m; ++k)
      if (std::abs(std::abs(js.sigma(k)) - 1.0) > 1e-12) return false;
  }
  return true;
}

inline bool tau_margins(std::uint64_t seed) {
  Rng rng(seed ^ 0x7au);
  for (int i = 0; i < 20; ++i) {
    int m = 2 + static_cast<int>(rng.next_u64() % 7);
    ComplexMatrix u = random_unitary(m, rng);
    TauChoice tc = tau_rotate(u);
    if (!(tc.margin > 0)) return false;
    if (tc.exceptional.size() > static_cast<std::size_t>(2 * m)) return false;
  }
  return true;
}

inline bool block_equivalence(std::uint64_t seed) {
  Rng rng(seed ^ 0xb10c);
  for (int i = 0; i < 20; ++i) {
    int d = 1 + static_cast<int>(rng.next_u64() % 3);
    // positive instance: built block-diagonal
    ComplexMatrix diag = ComplexMatrix::Zero(2 * d, 2 * d);
    diag.topLeftCorner(d, d) = random_unitary(d, rng);
    diag.bottomRightCorner(d, d) = random_unitary(d, rng);
    ComplexMatrix u = random_orthogonal(2 * d, rng).cast<Complex>() * diag;
    if (min_singular_value(RealMatrix(u.imag())) > 1e-3) {
      RealMatrix p = RealMatrix(u.imag()).inverse() * u.real();
      double off = std::sqrt(p.topRightCorner(d, d).squaredNorm() +
                             p.bottomLeftCorner(d, d).squaredNorm());
      if (off > 1e-8 * std::max(1.0, p.norm())) return false;
    }
    // negative instance: generic unitary
    ComplexMatrix v = random_unitary(2 * d, rng);
    ComplexMatrix m = v.transpose() * v;
    if (off_block_frobenius(m) > 1e-4 * m.norm() &&
        min_singular_value(RealMatrix(v.imag())) > 1e-3) {
      RealMatrix p = RealMatrix(v.imag()).inverse() * v.real();
      double off = std::sqrt(p.topRightCorner(d, d).squaredNorm() +
                             p.bottomLeftCorner(d, d).squaredNorm());
      if (off <= 1e-8 * std::max(1.0, p.norm())) return false;
    }
  }
  return true;
}

inline bool verdict_invariance(std::uint64_t seed) {
  for (int i = 0; i < 10; ++i) {
    SymplecticMatrix a = random_symplectic(2, seed + 1000 + i);
    if (!verdict_invariance_check(a, seed + i, 4)) return false;
  }
  return verdict_invariance_check(catalog(Catalog::Stft, 1), seed, 4) &&
         verdict_invariance_check(standard_j(2), seed, 4);
}

inline bool fourier_checks() {
  GridSpec spec = critical_grid(1, 64);
  GridFunction f = sample(Shape::Gauss, spec);
  if (rel_l2_diff(apply_fourier(f), f) > 1e-6) return false;
  // modulation moves the spectrum in the +xi direction under e^{-2 pi i}
  GridFunction mod = f;
  for (int j = 0; j < spec.n; ++j)
    mod.samples[j] *= std::polar(1.0, 2.0 * M_PI * 1.0 * spec.coord(j));
  GridFunction hat = apply_fourier(mod);
  int peak = 0;
  for (int j = 0; j < spec.n; ++j)
    if (std::abs(hat.samples[j]) > std::abs(hat.samples[peak])) peak = j;
  return std::abs(spec.coord(peak) - 1.0) < 2 * spec.h;
}

inline bool fracft_semigroup() {
  GridSpec spec = critical_grid(1, 128);
  GridFunction f = sample(Shape::Gauss, spec);
  ComplexVector s1(1), s2(1), s12(1);
  s1(0) = std::polar(1.0, 0.7);
  s2(0) = std::polar(1.0, 1.1);
  s12(0) = s1(0) * s2(0);
  GridFunction a = apply_frac_ft(apply_frac_ft(f, s1), s2);
  GridFunction b = apply_frac_ft(f, s12);
  return rel_l2_modulus_diff(a, b) < 1e-3;
}

inline bool stft_gaussian() {
  GridSpec spec = critical_grid(1, 128);
  GridFunction f = sample(Shape::Gauss, spec);
  GridFunction v = stft(f, f);
  GridFunction target = GridFunction::zeros(GridSpec{2, spec.n, spec.h});
  for (int i = 0; i < spec.n; ++i)
    for (int j = 0; j < spec.n; ++j) {
      double x = spec.coord(i), w = spec.coord(j);
      target.samples[static_cast<std::size_t>(i) * spec.n + j] =
          std::exp(-M_PI * (x * x + w * w) / 2.0);
    }
  return rel_l2_modulus_diff(v, target) < 1e-3;
}

inline bool rihaczek_modulus() {
  GridSpec spec = critical_grid(1, 128);
  GridFunction f = sample(Shape::Gauss, spec);
  GridFunction g = sample(Shape::Hermite, spec, {.k = 1});
  GridFunction w = wigner(catalog(Catalog::TauWigner, 1, {.tau = 0.0}), f, g);
  GridFunction ghat = apply_fourier(g);
  GridFunction target = GridFunction::zeros(GridSpec{2, spec.n, spec.h});
  for (int i = 0; i < spec.n; ++i)
    for (int j = 0; j < spec.n; ++j)
      target.samples[static_cast<std::size_t>(i) * spec.n + j] =
          std::abs(f.samples[i]) * std::abs(ghat.samples[j]);
  return rel_l2_modulus_diff(w, target) < 1e-3;
}

inline bool witness_support() {
  GridSpec spec = critical_grid(1, 128);
  GridFunction f0 = sample(Shape::Rect, spec, {.a = 1.0});
  WitnessRecipe recipe = witness_recipe(standard_j(2), VerdictKind::Sesquilinear);
  WitnessBuild wb = witness_build(recipe, f0, f0);
  SupportReport rep = support_report(wb.w, 1e-3);
  return std::abs(rep.area - 4.0) < 1.0;
}

inline bool json_roundtrip() {
  Verdict v = decide_sesquilinear(catalog(Catalog::Stft, 1));
  Verdict v2 = verdict_from_json(Json::parse(verdict_to_json(v).dump()));
  if (v2.holds != v.holds || v2.off_block_norm != v.off_block_norm) return false;
  SymplecticMatrix a = random_symplectic(2, 7);
  RealMatrix m = real_matrix_from_json(Json::parse(matrix_to_json(a).dump()));
  return (m - a.matrix()).norm() == 0.0;
}

}  // namespace selfcheck_detail

inline std::vector<CheckResult> run_selfcheck(std::uint64_t seed) {
  using Fn = std::function<bool()>;
  std::vector<std::pair<std::string, Fn>> checks = {
      {"catalog_pre_iwasawa_stft", [] { return selfcheck_detail::catalog_pre_iwasawa(); }},
      {"verdict_table", [] { return selfcheck_detail::verdict_table(); }},
      {"pre_iwasawa_reconstruction", [seed] { return selfcheck_detail::pre_iwasawa_reconstruction(seed); }},
      {"joint_svd_invariants", [seed] { return selfcheck_detail::joint_svd_invariants(seed); }},
      {"tau_rotation_margins", [seed] { return selfcheck_detail::tau_margins(seed); }},
      {"block_diagonal_equivalence", [seed] { return selfcheck_detail::block_equivalence(seed); }},
      {"verdict_invariance", [seed] { return selfcheck_detail::verdict_invariance(seed); }},
      {"fourier_unitarity_and_shift", [] { return selfcheck_detail::fourier_checks(); }},
      {"fracft_semigroup", [] { return selfcheck_detail::fracft_semigroup(); }},
      {"stft_gaussian_modulus", [] { return selfcheck_detail::stft_gaussian(); }},
      {"rihaczek_modulus", [] { return selfcheck_detail::rihaczek_modulus(); }},
      {"witness_support_area", [] { return selfcheck_detail::witness_support(); }},
      {"json_roundtrip", [] { return selfcheck_detail::json_roundtrip(); }},
  };
  std::vector<CheckResult> results;
  for (auto& [name, fn] : checks) {
    CheckResult r;
    r.name = name;
    try {
      r.pass = fn();
    } catch (const std::exception& e) {
      r.pass = false;
      r.note = e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace metaplectic
