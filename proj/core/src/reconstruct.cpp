#include "numphase/reconstruct.hpp"

#include <cmath>
#include <sstream>

#include "fft.hpp"

namespace numphase {

namespace {

// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(cplx x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  struct Real {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
      const double t = sum + x;
      if (std::abs(sum) >= std::abs(x)) {
        carry += (sum - t) + x;
      } else {
        carry += (x - t) + sum;
      }
      sum = t;
    }
    double value() const { return sum + carry; }
  };
  Real re_;
  Real im_;
};

RVector diagonal_from(const CMatrix& c) { return c.row(0).real().transpose(); }

}  // namespace

FourierLadder::FourierLadder(Truncation t, RVector diag_sum, const CMatrix& coeffs)
    : trunc_(t), diag_(std::move(diag_sum)), coeffs_(CMatrix::Zero(t.dim(), t.dim())) {
  const int d = t.dim();
  if (diag_.size() != d) throw ValidationError("FourierLadder: diagonal must have length D");
  if (coeffs.rows() != d || coeffs.cols() != d) {
    throw ValidationError("FourierLadder: coefficient array must be D x D");
  }
  if (!diag_.allFinite()) throw ValidationError("FourierLadder: non-finite diagonal");
  for (int m = 1; m < d; ++m) {
    for (int n = 0; n + m < d; ++n) coeffs_(m, n) = coeffs(m, n);
  }
  if (!coeffs_.allFinite()) throw ValidationError("FourierLadder: non-finite coefficient");
}

cplx FourierLadder::coeff(int m, int n) const {
  if (m < 1 || n < 0 || m + n >= dim()) return 0.0;
  return coeffs_(m, n);
}

CMatrix fourier_coefficients(const NPWignerTable& table) {
  const Truncation t = table.truncation();
  table.grid().require_compatible(t);
  const int d = t.dim();
  const int m_points = table.grid().size();
  const double w = table.grid().weight();
  CMatrix c(d, d);
  for (int n = 0; n < d; ++n) {
    detail::CBuffer column(m_points);
    for (int j = 0; j < m_points; ++j) column[j] = table(j, n);
    const detail::CBuffer spectrum = detail::dft_forward(column);
    // e^{-i m phi_j} = (-1)^m e^{-2 pi i m j / M}
    for (int m = 0; m < d; ++m) c(m, n) = w * detail::parity(m) * spectrum[m];
  }
  return c;
}

FourierLadder ladder_closed_form(const NPWignerTable& table) {
  const int d = table.dim();
  const CMatrix c = fourier_coefficients(table);
  CMatrix coeffs = CMatrix::Zero(d, d);
  for (int m = 1; m < d; ++m) {
    for (int n = 0; n + m < d; ++n) {
      CompensatedSum acc;
      for (int l = n / m; l >= 0; --l) {
        const double sign = (l % 2 == 0) ? 1.0 : -1.0;
        acc.add(sign * c(m, n - l * m));
      }
      coeffs(m, n) = 2.0 * acc.value();
    }
  }
  return FourierLadder(table.truncation(), diagonal_from(c), coeffs);
}

FourierLadder ladder_recursive(const NPWignerTable& table) {
  const int d = table.dim();
  const CMatrix c = fourier_coefficients(table);
  CMatrix coeffs = CMatrix::Zero(d, d);
  for (int m = 1; m < d; ++m) {
    for (int n = 0; n + m < d; ++n) {
      coeffs(m, n) = (n < m) ? 2.0 * c(m, n) : 2.0 * c(m, n) - coeffs(m, n - m);
    }
  }
  return FourierLadder(table.truncation(), diagonal_from(c), coeffs);
}

CMatrix assemble_matrix(const FourierLadder& ladder) {
  const int d = ladder.dim();
  CMatrix rho = CMatrix::Zero(d, d);
  for (int n = 0; n < d; ++n) rho(n, n) = ladder.diag(n);
  for (int m = 1; m < d; ++m) {
    for (int n = 0; n + m < d; ++n) {
      const cplx v = ladder.coeff(m, n);
      rho(n, n + m) = v;
      rho(n + m, n) = std::conj(v);
    }
  }
  return rho;
}

DensityMatrix assemble_density(const FourierLadder& ladder, const Tolerances& tol) {
  CMatrix rho = assemble_matrix(ladder);
  try {
    return DensityMatrix::from_matrix(std::move(rho), tol);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("inconsistent number-phase Wigner input: ") + e.what());
  }
}

DensityMatrix reconstruct_density(const NPWignerTable& table, const Tolerances& tol) {
  return assemble_density(ladder_closed_form(table), tol);
}

}  // namespace numphase
