// Acceptance suite: six criteria covering catalog reproduction, the verdict
// table, decomposition properties at scale, the joint-SVD/tau machinery, the
// grid pipeline, and the partial STFT. Prints one pass/fail line each.

#include <chrono>
#include <cstdio>
#include <functional>

#include "metaplectic/metaplectic.hpp"

using namespace metaplectic;

namespace {

struct Criterion {
  const char* name;
  double time_limit_s;
  std::function<bool(std::string&)> run;
};

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

// --- criterion 1: catalog reproduction ------------------------------------

bool catalog_reproduction(std::string& note) {
  for (int d : {1, 2}) {
    RealMatrix i = RealMatrix::Identity(d, d);
    PreIwasawaFactors pi = pre_iwasawa(catalog(Catalog::Stft, d));
    RealMatrix q_expect = RealMatrix::Zero(2 * d, 2 * d);
    q_expect.topRightCorner(d, d) = -0.5 * i;
    q_expect.bottomLeftCorner(d, d) = -0.5 * i;
    ComplexMatrix u_expect = ComplexMatrix::Zero(2 * d, 2 * d);
    double r = 1.0 / std::sqrt(2.0);
    u_expect.topLeftCorner(d, d) = Complex(r, 0) * i;
    u_expect.topRightCorner(d, d) = Complex(-r, 0) * i;
    u_expect.bottomLeftCorner(d, d) = Complex(0, r) * i;
    u_expect.bottomRightCorner(d, d) = Complex(0, r) * i;
    if ((pi.q - q_expect).cwiseAbs().maxCoeff() > 1e-12 ||
        (pi.l - std::sqrt(2.0) * RealMatrix::Identity(2 * d, 2 * d)).cwiseAbs().maxCoeff() > 1e-12 ||
        (pi.u - u_expect).cwiseAbs().maxCoeff() > 1e-12) {
      note = "STFT pre-Iwasawa factors differ (d=" + std::to_string(d) + ")";
      return false;
    }

    ComplexMatrix cross = ComplexMatrix::Zero(2 * d, 2 * d);
    cross.topRightCorner(d, d) = Complex(-1, 0) * i;
    cross.bottomLeftCorner(d, d) = Complex(-1, 0) * i;
    for (Catalog c : {Catalog::Stft, Catalog::Ambiguity}) {
      ComplexMatrix m = deciding_product(catalog(c, d));
      if ((m - cross).cwiseAbs().maxCoeff() > 1e-12) {
        note = std::string("deciding product mismatch for ") + catalog_name(c);
        return false;
      }
    }

    for (double tau : {0.3, 0.5, 0.7}) {
      double a2 = 1.0 - 2.0 * tau + 2.0 * tau * tau;
      ComplexMatrix expect = ComplexMatrix::Zero(2 * d, 2 * d);
      expect.topLeftCorner(d, d) = Complex((1 - 2 * tau) / a2, 0) * i;
      expect.topRightCorner(d, d) = Complex(2 * (1 - tau) * tau / a2, 0) * i;
      expect.bottomLeftCorner(d, d) = Complex(2 * (1 - tau) * tau / a2, 0) * i;
      expect.bottomRightCorner(d, d) = Complex(-(1 - 2 * tau) / a2, 0) * i;
      ComplexMatrix m = deciding_product(catalog(Catalog::TauWigner, d, {.tau = tau}));
      if ((m - expect).cwiseAbs().maxCoeff() > 1e-12) {
        note = "tau-Wigner deciding product mismatch at tau=" + std::to_string(tau);
        return false;
      }
    }
  }
  return true;
}

// --- criterion 2: verdict table --------------------------------------------

bool verdict_table(std::string& note) {
  auto expect = [&](bool got, bool want, const std::string& what) {
    if (got != want) {
      note = "verdict mismatch: " + what;
      return false;
    }
    return true;
  };
  const double tol = 1e-8;
  if (!expect(decide_sesquilinear(catalog(Catalog::Stft, 1), tol).holds, true, "stft")) return false;
  if (!expect(decide_sesquilinear(catalog(Catalog::Ambiguity, 1), tol).holds, true, "ambiguity"))
    return false;
  for (int k = 1; k <= 9; ++k) {
    double tau = k / 10.0;
    if (!expect(decide_sesquilinear(catalog(Catalog::TauWigner, 1, {.tau = tau}), tol).holds, true,
                "tau_wigner " + std::to_string(tau)))
      return false;
  }
  if (!expect(decide_sesquilinear(catalog(Catalog::Fourier, 1), tol).holds, false, "fourier"))
    return false;
  if (!expect(decide_sesquilinear(catalog(Catalog::Chirp, 1), tol).holds, false, "chirp"))
    return false;
  if (!expect(decide_sesquilinear(catalog(Catalog::Dilation, 1), tol).holds, false, "dilation"))
    return false;
  for (double tau : {0.0, 1.0}) {
    SymplecticMatrix a = catalog(Catalog::TauWigner, 1, {.tau = tau});
    if (!expect(decide_sesquilinear(a, tol).holds, false, "tau_wigner edge sesquilinear"))
      return false;
    if (!expect(decide_quadratic(a, tol).holds, true, "tau_wigner edge quadratic")) return false;
  }
  // quadratic follows sesquilinear wherever the latter holds
  for (Catalog c : {Catalog::Stft, Catalog::Ambiguity}) {
    if (!expect(decide_quadratic(catalog(c, 1), tol).holds, true, "quadratic follows sesq"))
      return false;
  }
  for (int k = 1; k <= 9; ++k) {
    if (!expect(decide_quadratic(catalog(Catalog::TauWigner, 1, {.tau = k / 10.0}), tol).holds,
                true, "quadratic tau"))
      return false;
  }
  ComplexMatrix rot = ComplexMatrix::Zero(2, 2);
  rot(0, 0) = std::polar(1.0, 0.4);
  rot(1, 1) = std::polar(1.0, -0.4);
  if (!expect(decide_quadratic(gen_ru(rot), tol).holds, false, "conjugate-pair rotation"))
    return false;
  return true;
}

// --- criterion 3: decomposition property suite -----------------------------

bool decomposition_suite(std::string& note) {
  const int half_dims[3] = {1, 2, 4};
  for (int i = 0; i < 1000; ++i) {
    int n = half_dims[i % 3];
    SymplecticMatrix a = random_symplectic(n, 777 + i);
    PreIwasawaFactors pi = pre_iwasawa(a);
    if (rel_frob(pi.reconstruct().matrix(), a.matrix()) > 1e-9) {
      note = "reconstruction residual too large at i=" + std::to_string(i);
      return false;
    }
    if ((pi.q - pi.q.transpose()).norm() > 1e-10 * std::max(1.0, pi.q.norm())) {
      note = "Q asymmetry at i=" + std::to_string(i);
      return false;
    }
    SymEig le = sym_eig(pi.l);
    if (!(le.values(le.values.size() - 1) > 0) ||
        (pi.l - pi.l.transpose()).norm() > 1e-10 * pi.l.norm()) {
      note = "L not SPD at i=" + std::to_string(i);
      return false;
    }
    ComplexMatrix gram = pi.u.adjoint() * pi.u;
    if ((gram - ComplexMatrix::Identity(n, n)).norm() > 1e-10) {
      note = "U not unitary at i=" + std::to_string(i);
      return false;
    }
    if (n % 2 == 0) {
      if (!verdict_invariance_check(a, 9000 + i, 8, 1e-8)) {
        note = "verdict invariance failed at i=" + std::to_string(i);
        return false;
      }
    }
  }
  return true;
}

// --- criterion 4: joint SVD + tau suite -------------------------------------

bool joint_svd_tau_suite(std::string& note) {
  Rng size_rng(4242);
  for (int i = 0; i < 1000; ++i) {
    int m = 2 + static_cast<int>(size_rng.next_u64() % 15);
    Rng draw = size_rng.split(i);
    ComplexMatrix u = random_unitary(m, draw);
    JointSvd js = joint_svd(u);
    double rec = (js.reconstruct() - u).norm();
    if (rec > 1e-10) {
      note = "joint SVD reconstruction " + std::to_string(rec);
      return false;
    }
    if ((js.w.transpose() * js.w - RealMatrix::Identity(m, m)).norm() > 1e-12 * m ||
        (js.v.transpose() * js.v - RealMatrix::Identity(m, m)).norm() > 1e-12 * m) {
      note = "factor orthogonality at i=" + std::to_string(i);
      return false;
    }
    for (int k = 0; k < m; ++k)
      if (std::abs(std::abs(js.sigma(k)) - 1.0) > 1e-12) {
        note = "sigma modulus at i=" + std::to_string(i);
        return false;
      }

    // 10^4-point angular scan for sigma_min(Im(tau U)) < 1e-6. The scan value
    // min_k |sin(theta + phi_k)| equals sigma_min up to the (verified)
    // reconstruction residual; ambiguous samples fall back to a direct SVD.
    std::vector<double> phases(m);
    for (int k = 0; k < m; ++k) phases[k] = std::arg(js.sigma(k));
    bool full_svd_scan = (i % 50 == 0);
    int flagged = 0;
    for (int j = 0; j < 10000; ++j) {
      double theta = 2.0 * M_PI * j / 10000.0;
      bool flag;
      if (full_svd_scan) {
        flag = detail::im_margin(u, theta) < 1e-6;
      } else {
        double v = 1.0;
        for (int k = 0; k < m; ++k) v = std::min(v, std::abs(std::sin(theta + phases[k])));
        flag = (std::abs(v - 1e-6) < 1e-8) ? detail::im_margin(u, theta) < 1e-6 : v < 1e-6;
      }
      flagged += flag;
    }
    if (flagged > 2 * m) {
      note = "more than 2d near-singular angles at i=" + std::to_string(i);
      return false;
    }
  }

  // Equivalence of block-diagonality: 200 positive and 200 negative instances.
  Rng rng(31337);
  int positives = 0, negatives = 0;
  while (positives < 200 || negatives < 200) {
    int d = 1 + static_cast<int>(rng.next_u64() % 4);
    ComplexMatrix u;
    bool expect_block;
    if (positives <= negatives && positives < 200) {
      ComplexMatrix diag = ComplexMatrix::Zero(2 * d, 2 * d);
      diag.topLeftCorner(d, d) = random_unitary(d, rng);
      diag.bottomRightCorner(d, d) = random_unitary(d, rng);
      u = random_orthogonal(2 * d, rng).cast<Complex>() * diag;
      expect_block = true;
    } else {
      u = random_unitary(2 * d, rng);
      ComplexMatrix m = u.transpose() * u;
      if (off_block_frobenius(m) <= 1e-4 * m.norm()) continue;
      expect_block = false;
    }
    if (min_singular_value(RealMatrix(u.imag())) <= 1e-3) continue;
    RealMatrix p = RealMatrix(u.imag()).inverse() * u.real();
    double off = std::sqrt(p.topRightCorner(d, d).squaredNorm() +
                           p.bottomLeftCorner(d, d).squaredNorm());
    bool p_block = off <= 1e-8 * std::max(1.0, p.norm());
    if (p_block != expect_block) {
      note = "equivalence misclassification";
      return false;
    }
    (expect_block ? positives : negatives)++;
  }
  return true;
}

// --- criterion 5: grid suite -------------------------------------------------

bool grid_suite(std::string& note) {
  GridSpec spec = critical_grid(1, 256);
  GridFunction gauss = sample(Shape::Gauss, spec);

  // (a) Gaussian STFT modulus
  {
    GridFunction v = stft(gauss, gauss);
    GridFunction target = GridFunction::zeros(GridSpec{2, spec.n, spec.h});
    for (int i = 0; i < spec.n; ++i)
      for (int j = 0; j < spec.n; ++j) {
        double x = spec.coord(i), w = spec.coord(j);
        target.samples[static_cast<std::size_t>(i) * spec.n + j] =
            std::exp(-M_PI * (x * x + w * w) / 2.0);
      }
    double err = rel_l2_modulus_diff(v, target);
    if (err > 1e-3) {
      note = "(a) gaussian STFT err " + std::to_string(err);
      return false;
    }
  }

  // (b) Rihaczek modulus |f(x)||ghat(w)|
  {
    GridFunction f = gauss;
    GridFunction g = sample(Shape::Hermite, spec, {.k = 1});
    GridFunction ghat = apply_fourier(g);
    GridFunction w0 = wigner(catalog(Catalog::TauWigner, 1, {.tau = 0.0}), f, g);
    GridFunction target = GridFunction::zeros(GridSpec{2, spec.n, spec.h});
    for (int i = 0; i < spec.n; ++i)
      for (int j = 0; j < spec.n; ++j)
        target.samples[static_cast<std::size_t>(i) * spec.n + j] =
            std::abs(f.samples[i]) * std::abs(ghat.samples[j]);
    double err = rel_l2_modulus_diff(w0, target);
    if (err > 1e-3) {
      note = "(b) Rihaczek err " + std::to_string(err);
      return false;
    }
  }

  // (c) free-reduction identity
  {
    GridFunction f = gauss;
    GridFunction g = sample(Shape::Hermite, spec, {.k = 1});
    RealMatrix p(2, 2);
    p << 0.4, 0.7, 0.7, -0.2;
    const double gamma = p(0, 1);
    GridFunction w = wigner(standard_j(2) * gen_vq(p), f, g);
    GridFunction f1 = apply_chirp(f, p.topLeftCorner(1, 1));
    GridFunction g1 = apply_chirp(g, RealMatrix(-p.bottomRightCorner(1, 1)));
    GridFunction f2 = apply_dilation(f1, gamma * RealMatrix::Identity(1, 1));
    for (Complex& z : f2.samples) z *= std::sqrt(gamma);
    GridFunction g2 = apply_fourier(g1);
    GridFunction v = stft(f2, g2);
    RealMatrix scale = RealMatrix::Identity(2, 2);
    scale(0, 0) = 1.0 / gamma;
    GridFunction w_scaled = apply_dilation(w, scale);
    for (Complex& z : w_scaled.samples) z /= std::sqrt(gamma);
    GridFunction rhs = GridFunction::zeros(w.spec);
    for (int i = 0; i < spec.n; ++i)
      for (int j = 0; j < spec.n; ++j)
        rhs.samples[static_cast<std::size_t>(i) * spec.n + j] =
            v.samples[static_cast<std::size_t>(j) * spec.n + i] / gamma;
    double err = rel_l2_modulus_diff(w_scaled, rhs);
    if (err > 1e-2) {
      note = "(c) free-reduction err " + std::to_string(err);
      return false;
    }
  }

  // (d) support areas: stability for witnesses, growth for the STFT
  {
    for (double tau : {-1.0, 0.0}) {  // -1 encodes the Fourier matrix
      double areas[2];
      int k = 0;
      for (int n : {256, 512}) {
        GridSpec s = critical_grid(1, n);
        GridFunction rect = sample(Shape::Rect, s, {.a = 1.0});
        SymplecticMatrix a = tau < 0.0 ? standard_j(2) : catalog(Catalog::TauWigner, 1, {.tau = tau});
        WitnessRecipe recipe = witness_recipe(a, VerdictKind::Sesquilinear);
        areas[k++] = support_report(witness_build(recipe, rect, rect).w, 1e-3).area;
      }
      if (std::abs(areas[1] - areas[0]) > 0.1 * areas[0]) {
        note = "(d) witness area unstable: " + std::to_string(areas[0]) + " -> " +
               std::to_string(areas[1]);
        return false;
      }
    }
    double grow[3];
    int k = 0;
    for (int n : {256, 512, 1024}) {
      GridSpec s{1, n, 1.0 / 16.0};
      GridFunction f = sample(Shape::Rect, s, {.a = 1.0});
      GridFunction env = sample(Shape::Gauss, s);
      for (int j = 0; j < n; ++j) f.samples[j] *= env.samples[j];
      grow[k++] = support_report(stft(f, f), 1e-6).area;
    }
    if (!(grow[1] >= 2.0 * grow[0] * (1.0 - 1e-3) && grow[2] >= 2.0 * grow[1] * (1.0 - 1e-3))) {
      note = "(d) STFT support growth " + std::to_string(grow[0]) + ", " +
             std::to_string(grow[1]) + ", " + std::to_string(grow[2]);
      return false;
    }
  }

  // (e) fractional transform checks
  {
    GridFunction h1 = sample(Shape::Hermite, spec, {.k = 1});
    ComplexVector s(1);
    s(0) = Complex(0, 1);
    double err_i = rel_l2_diff(apply_frac_ft(h1, s), apply_fourier(h1));
    if (err_i > 1e-10) {
      note = "(e) sigma=i vs FFT err " + std::to_string(err_i);
      return false;
    }
    ComplexVector s1(1), s2(1), s12(1);
    s1(0) = std::polar(1.0, 0.7);
    s2(0) = std::polar(1.0, 1.1);
    s12(0) = s1(0) * s2(0);
    for (const GridFunction& f : {gauss, h1}) {
      double err = rel_l2_modulus_diff(apply_frac_ft(apply_frac_ft(f, s1), s2),
                                       apply_frac_ft(f, s12));
      if (err > 1e-3) {
        note = "(e) semigroup err " + std::to_string(err);
        return false;
      }
    }
    GridFunction mod = gauss;
    for (int j = 0; j < spec.n; ++j)
      mod.samples[j] *= std::polar(1.0, 2.0 * M_PI * 0.4 * spec.coord(j));
    GridFunction conj_in = mod;
    for (Complex& z : conj_in.samples) z = std::conj(z);
    ComplexVector sc(1);
    sc(0) = std::conj(s1(0));
    GridFunction lhs = apply_frac_ft(conj_in, s1);
    GridFunction rhs = apply_frac_ft(mod, sc);
    for (Complex& z : rhs.samples) z = std::conj(z);
    double err = rel_l2_modulus_diff(lhs, rhs);
    if (err > 1e-3) {
      note = "(e) conjugation rule err " + std::to_string(err);
      return false;
    }
  }
  return true;
}

// --- criterion 6: partial STFT ----------------------------------------------

bool partial_stft_suite(std::string& note) {
  const int n = 32;
  GridSpec spec1 = critical_grid(1, n);
  GridSpec spec2{2, n, spec1.h};
  GridFunction fa = sample(Shape::Gauss, spec1);
  GridFunction fb = sample(Shape::Hermite, spec1, {.k = 1});
  GridFunction ga = sample(Shape::Gauss, spec1);
  GridFunction gb = sample(Shape::Hermite, spec1, {.k = 2});
  GridFunction f = GridFunction::zeros(spec2), g = GridFunction::zeros(spec2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      f.samples[static_cast<std::size_t>(i) * n + j] = fa.samples[i] * fb.samples[j];
      g.samples[static_cast<std::size_t>(i) * n + j] = ga.samples[i] * gb.samples[j];
    }

  GridFunction part = partial_stft(f, g, 1);
  GridFunction v1 = stft(fa, ga);
  double num = 0.0, den = 0.0;
  for (int x1 = 0; x1 < n; ++x1)
    for (int x2 = 0; x2 < n; ++x2)
      for (int w1 = 0; w1 < n; ++w1)
        for (int w2 = 0; w2 < n; ++w2) {
          Complex gbneg = (w2 == 0) ? Complex(0, 0) : gb.samples[n - w2];
          Complex expect = v1.samples[static_cast<std::size_t>(x1) * n + w1] * fb.samples[x2] *
                           std::conj(gbneg);
          Complex got = part.samples[((static_cast<std::size_t>(x1) * n + x2) * n + w1) * n + w2];
          num += std::norm(got - expect);
          den += std::norm(expect);
        }
  double err = std::sqrt(num / den);
  if (err > 1e-3) {
    note = "k=1 factorized-oracle err " + std::to_string(err);
    return false;
  }

  GridFunction full = partial_stft(f, g, 2);
  GridFunction via = stft(f, g);
  for (std::size_t i = 0; i < full.samples.size(); ++i)
    if (full.samples[i] != via.samples[i]) {
      note = "k=d does not reduce exactly to stft";
      return false;
    }
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"1 catalog reproduction (pre-Iwasawa factors, deciding products, d in {1,2})", 1.0,
       catalog_reproduction},
      {"2 verdict table (sesquilinear + quadratic, tol 1e-8)", 1.0, verdict_table},
      {"3 decomposition properties (1000 random symplectic, invariances)", 30.0,
       decomposition_suite},
      {"4 joint SVD + tau suite (1000 unitaries, scans, equivalence)", 60.0, joint_svd_tau_suite},
      {"5 grid suite at N = 256, d = 1", 120.0, grid_suite},
      {"6 partial STFT at d = 2, N = 32", 120.0, partial_stft_suite},
  };

  bool all = true;
  for (Criterion& c : criteria) {
    std::string note;
    double t0 = now_s();
    bool ok = false;
    try {
      ok = c.run(note);
    } catch (const std::exception& e) {
      note = e.what();
    }
    double dt = now_s() - t0;
    bool in_time = dt < c.time_limit_s;
    bool pass = ok && in_time;
    all = all && pass;
    std::printf("[%s] criterion %s (%.2f s%s)%s%s\n", pass ? "PASS" : "FAIL", c.name, dt,
                in_time ? "" : " OVER TIME LIMIT", note.empty() ? "" : " -- ", note.c_str());
  }
  std::printf(all ? "acceptance: all criteria passed\n" : "acceptance: FAILURES\n");
  return all ? 0 : 1;
}
