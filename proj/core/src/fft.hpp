#pragma once

#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace numphase::detail {

using CBuffer = std::vector<std::complex<double>>;

// Unscaled forward transform: X_m = sum_j x_j e^{-2 pi i m j / M}.
inline CBuffer dft_forward(const CBuffer& x) {
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  CBuffer out;
  fft.fwd(out, x);
  return out;
}

// Unscaled backward transform: x_j = sum_m X_m e^{+2 pi i m j / M}.
inline CBuffer dft_backward(const CBuffer& x) {
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  CBuffer out;
  fft.inv(out, x);
  return out;
}

// Index of frequency m (possibly negative) in a length-M transform.
inline int wrap(int m, int size) {
  const int r = m % size;
  return r < 0 ? r + size : r;
}

// (-1)^m, the factor picked up by e^{i m phi_j} when the grid starts at -pi.
inline double parity(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

}  // namespace numphase::detail
