#pragma once

#include <span>
#include <vector>

#include "numphase/fock.hpp"

namespace numphase {

// Fourier coefficients f_m = (1/2pi) int f(phi) e^{-i m phi} dphi of a
// phase-only symbol, for m = -m_max..m_max.
class FourierSymbol {
 public:
  FourierSymbol(int m_max, std::vector<cplx> coefficients);

  // Samples on the uniform grid phi_j = -pi + 2 pi j / M. Rejects M < 2D - 1,
  // below which the coefficients needed on a D-dimensional space alias.
  static FourierSymbol from_samples(std::span<const cplx> samples, Truncation t);

  int m_max() const noexcept { return m_max_; }
  // Zero outside [-m_max, m_max].
  cplx coefficient(int m) const;
  const std::vector<cplx>& coefficients() const noexcept { return coef_; }

 private:
  int m_max_;
  std::vector<cplx> coef_;
};

// Susskind-Glogower lowering operator e^{i phi} = sum_n |n><n+1|.
OperatorMatrix sg_lower(Truncation t);
// e^{-i phi} = sum_n |n+1><n|, the adjoint of sg_lower.
OperatorMatrix sg_raise(Truncation t);
// (e^{i phi})^k (e^{-i phi})^m; requires k + m < D.
OperatorMatrix sg_power_product(Truncation t, int k, int m);

// int f(phi) |phi><phi| dphi, i.e. the Toeplitz matrix <k|f|n> = f_{n-k}.
OperatorMatrix quantize_phase_function(Truncation t, const FourierSymbol& f);

// Leading (size x size) block, the part of an identity that survives truncation.
CMatrix valid_block(const CMatrix& m, int size);

}  // namespace numphase
