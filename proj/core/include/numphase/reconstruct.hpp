#pragma once

#include "numphase/fock.hpp"
#include "numphase/wigner.hpp"

namespace numphase {

// Fourier ladder of a density operator:
//   diag(n)     = rho_0(n) + conj(rho_0(n)) = <n|rho|n>
//   coeff(m, n) = rho_m(n) = <n|rho|n+m>,  m >= 1, n + m <= D - 1.
// Only the real sum for m = 0 is recoverable; the split of rho_0 into
// itself and its conjugate never enters the density operator.
class FourierLadder {
 public:
  // coeffs is D x D indexed (m, n); entries outside 1 <= m <= D-1-n are ignored.
  FourierLadder(Truncation t, RVector diag_sum, const CMatrix& coeffs);

  Truncation truncation() const noexcept { return trunc_; }
  int dim() const noexcept { return trunc_.dim(); }
  double diag(int n) const { return diag_(n); }
  const RVector& diag_sum() const noexcept { return diag_; }
  // Zero outside the stored triangle.
  cplx coeff(int m, int n) const;
  const CMatrix& coeffs() const noexcept { return coeffs_; }

 private:
  Truncation trunc_;
  RVector diag_;
  CMatrix coeffs_;
};

// c(m, n) = w sum_j rho_W(phi_j, n) e^{-i m phi_j}, 0 <= m <= D-1, stored (m, n).
CMatrix fourier_coefficients(const NPWignerTable& table);

// rho_m(n) = 2 sum_{l=0}^{floor(n/m)} (-1)^l c(m, n - l m), summed from the
// deepest term upward with compensation; diag(n) = c(0, n).
FourierLadder ladder_closed_form(const NPWignerTable& table);

// Same ladder by peeling: rho_m(n) = 2 c(m, n) for n < m, then
// rho_m(n) = 2 c(m, n) - rho_m(n - m).
FourierLadder ladder_recursive(const NPWignerTable& table);

// <n|rho|n> = diag(n), <n|rho|n+m> = rho_m(n), <n+m|rho|n> = conj(rho_m(n)).
// Throws ValidationError when the result is not a valid density matrix.
DensityMatrix assemble_density(const FourierLadder& ladder, const Tolerances& tol = {});
CMatrix assemble_matrix(const FourierLadder& ladder);

// ladder_closed_form followed by assemble_density.
DensityMatrix reconstruct_density(const NPWignerTable& table, const Tolerances& tol = {});

}  // namespace numphase
