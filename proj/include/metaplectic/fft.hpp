#pragma once

// Centered unitary DFT along one axis of a row-major multi-dimensional
// complex array. Convention: G(w_q) = h * sum_j F(x_j) e^{-2 pi i x_j w_q}
// with x_j = (j - N/2) h and w_q on the same grid, which requires critical
// sampling N h^2 = 1. Realized through a standard FFT with (-1)^j twiddles.

#include <unsupported/Eigen/FFT>
#include <complex>
#include <vector>

#include "metaplectic/errors.hpp"

namespace metaplectic::detail {

using Complex = std::complex<double>;

inline void centered_fft_line(std::vector<Complex>& line, double h) {
  const int n = static_cast<int>(line.size());
  for (int j = 1; j < n; j += 2) line[j] = -line[j];
  static thread_local Eigen::FFT<double> fft;
  std::vector<Complex> out(n);
  fft.fwd(out, line);
  const double phase = (n % 4 == 0) ? 1.0 : -1.0;  // e^{-i pi N / 2} for even N
  for (int q = 0; q < n; ++q) {
    double sgn = (q % 2 == 0) ? 1.0 : -1.0;
    line[q] = out[q] * (h * phase * sgn);
  }
}

// Applies op to every 1-d line of the array along `axis`. The array has
// `dims` axes of length n each, row-major with axis 0 slowest.
template <typename LineOp>
void for_each_line(std::vector<Complex>& samples, int dims, int n, int axis, LineOp&& op) {
  std::size_t stride = 1;
  for (int a = dims - 1; a > axis; --a) stride *= static_cast<std::size_t>(n);
  std::size_t block = stride * static_cast<std::size_t>(n);
  std::size_t total = samples.size();
  std::vector<Complex> line(n);
  for (std::size_t base = 0; base < total; base += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      for (int j = 0; j < n; ++j) line[j] = samples[base + off + stride * j];
      op(line);
      for (int j = 0; j < n; ++j) samples[base + off + stride * j] = line[j];
    }
  }
}

}  // namespace metaplectic::detail
