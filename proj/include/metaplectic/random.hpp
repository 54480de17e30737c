#pragma once

// Seeded, stdlib-independent random draws. The generator is a counter-style
// splitmix64 stream, so identical seeds give identical matrices on every
// platform and concurrent callers just use distinct Rng values.

#include <cstdint>

#include "metaplectic/matrix.hpp"

namespace metaplectic {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (pairs cached).
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(2.0 * M_PI * u2);
    have_cached_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

  /// Derived independent stream.
  Rng split(std::uint64_t stream) const {
    Rng r(state_ ^ (0xA0761D6478BD642Full * (stream + 1)));
    r.next_u64();
    return r;
  }

 private:
  std::uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

inline RealMatrix random_gaussian(int rows, int cols, Rng& rng) {
  RealMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

inline RealMatrix random_symmetric(int n, Rng& rng) { return symmetrized(random_gaussian(n, n, rng)); }

/// Haar-ish orthogonal matrix: QR of a Gaussian with R-diagonal made positive.
inline RealMatrix random_orthogonal(int n, Rng& rng) {
  RealMatrix g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  return q;
}

/// Haar unitary: QR of a complex Gaussian with R-diagonal phases removed.
inline ComplexMatrix random_unitary(int n, Rng& rng) {
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    Complex d = r(i, i);
    double a = std::abs(d);
    if (a > 0) q.col(i) *= d / a;
  }
  return q;
}

/// Invertible matrix with singular values in [0.5, 2].
inline RealMatrix random_invertible(int n, Rng& rng) {
  RealMatrix o1 = random_orthogonal(n, rng);
  RealMatrix o2 = random_orthogonal(n, rng);
  RealVector s(n);
  for (int i = 0; i < n; ++i) s(i) = rng.uniform(0.5, 2.0);
  return o1 * s.asDiagonal() * o2.transpose();
}

}  // namespace metaplectic
