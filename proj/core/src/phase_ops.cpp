#include "numphase/phase_ops.hpp"

#include <cmath>
#include <string>

#include "fft.hpp"

namespace numphase {

FourierSymbol::FourierSymbol(int m_max, std::vector<cplx> coefficients)
    : m_max_(m_max), coef_(std::move(coefficients)) {
  if (m_max < 0) throw DomainError("FourierSymbol: m_max must be non-negative");
  if (coef_.size() != static_cast<std::size_t>(2 * m_max + 1)) {
    throw DomainError("FourierSymbol: expected " + std::to_string(2 * m_max + 1) +
                      " coefficients, got " + std::to_string(coef_.size()));
  }
  for (const cplx& c : coef_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ValidationError("FourierSymbol: non-finite coefficient");
    }
  }
}

FourierSymbol FourierSymbol::from_samples(std::span<const cplx> samples, Truncation t) {
  const int m_points = static_cast<int>(samples.size());
  const int d = t.dim();
  if (m_points < 2 * d - 1) {
    throw DomainError("FourierSymbol: " + std::to_string(m_points) +
                      " samples alias on dimension " + std::to_string(d) + " (need >= " +
                      std::to_string(2 * d - 1) + ")");
  }
  const detail::CBuffer spectrum =
      detail::dft_forward(detail::CBuffer(samples.begin(), samples.end()));
  const int m_max = d - 1;
  std::vector<cplx> coef(2 * m_max + 1);
  for (int m = -m_max; m <= m_max; ++m) {
    coef[m + m_max] = detail::parity(m) * spectrum[detail::wrap(m, m_points)] /
                      static_cast<double>(m_points);
  }
  return FourierSymbol(m_max, std::move(coef));
}

cplx FourierSymbol::coefficient(int m) const {
  if (m < -m_max_ || m > m_max_) return 0.0;
  return coef_[m + m_max_];
}

OperatorMatrix sg_lower(Truncation t) {
  const int d = t.dim();
  CMatrix e = CMatrix::Zero(d, d);
  for (int n = 0; n + 1 < d; ++n) e(n, n + 1) = 1.0;
  return OperatorMatrix(std::move(e));
}

OperatorMatrix sg_raise(Truncation t) { return sg_lower(t).adjoint(); }

OperatorMatrix sg_power_product(Truncation t, int k, int m) {
  if (k < 0 || m < 0) throw DomainError("sg_power_product: powers must be non-negative");
  if (k + m >= t.dim()) {
    throw DomainError("sg_power_product: k + m = " + std::to_string(k + m) +
                      " leaves no valid block at dimension " + std::to_string(t.dim()));
  }
  const CMatrix lower = sg_lower(t).matrix();
  const CMatrix raise = lower.adjoint();
  CMatrix out = CMatrix::Identity(t.dim(), t.dim());
  for (int i = 0; i < k; ++i) out = out * lower;
  for (int i = 0; i < m; ++i) out = out * raise;
  return OperatorMatrix(std::move(out));
}

OperatorMatrix quantize_phase_function(Truncation t, const FourierSymbol& f) {
  const int d = t.dim();
  CMatrix out(d, d);
  for (int k = 0; k < d; ++k) {
    for (int n = 0; n < d; ++n) out(k, n) = f.coefficient(n - k);
  }
  return OperatorMatrix(std::move(out));
}

CMatrix valid_block(const CMatrix& m, int size) {
  if (size < 0 || size > m.rows() || size > m.cols()) {
    throw DomainError("valid_block: block size out of range");
  }
  return m.topLeftCorner(size, size);
}

}  // namespace numphase
