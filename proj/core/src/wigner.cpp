#include "numphase/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "fft.hpp"
#include "numphase/states.hpp"

namespace numphase {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_matching(const PhaseGrid& a, Truncation ta, const PhaseGrid& b, Truncation tb,
                      const char* what) {
  if (!(a == b)) {
    throw DomainError(std::string(what) + ": phase grids differ (" + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()) + " points)");
  }
  require_same_truncation(ta, tb, what);
}

// F_n(m) = (1/M) sum_j f(phi_j, n) e^{-i m phi_j} for |m| <= D-1, stored at
// (m + D - 1, n). Also returns the largest high-band energy fraction.
CMatrix column_coefficients(const CMatrix& f, int d, double* worst_high_band) {
  const int m_points = static_cast<int>(f.rows());
  CMatrix coef(2 * d - 1, d);
  double worst = 0.0;
  const int band_start = std::max(d, (m_points - d + 1) / 2);
  for (int n = 0; n < d; ++n) {
    detail::CBuffer column(m_points);
    for (int j = 0; j < m_points; ++j) column[j] = f(j, n);
    const detail::CBuffer spectrum = detail::dft_forward(column);
    for (int m = -(d - 1); m <= d - 1; ++m) {
      coef(m + d - 1, n) =
          detail::parity(m) * spectrum[detail::wrap(m, m_points)] / static_cast<double>(m_points);
    }
    double total = 0.0;
    double high = 0.0;
    for (int idx = 0; idx < m_points; ++idx) {
      const int freq = idx <= m_points / 2 ? idx : idx - m_points;
      const double e = std::norm(spectrum[idx]);
      total += e;
      if (std::abs(freq) >= band_start) high += e;
    }
    if (total > 0.0) worst = std::max(worst, high / total);
  }
  if (worst_high_band != nullptr) *worst_high_band = worst;
  return coef;
}

}  // namespace

PhaseGrid::PhaseGrid(int points) : points_(points) {
  if (points < 1) throw DomainError("phase grid needs at least one point");
}

PhaseGrid PhaseGrid::default_for(Truncation t) {
  int m = 1;
  while (m < 4 * t.dim()) m *= 2;
  return PhaseGrid(m);
}

double PhaseGrid::node(int j) const {
  return -std::numbers::pi + kTwoPi * static_cast<double>(j) / static_cast<double>(points_);
}

double PhaseGrid::weight() const { return kTwoPi / static_cast<double>(points_); }

void PhaseGrid::require_compatible(Truncation t) const {
  if (points_ < 2 * t.dim() - 1) {
    throw DomainError("phase grid of " + std::to_string(points_) +
                      " points is too coarse for dimension " + std::to_string(t.dim()) +
                      " (need >= " + std::to_string(2 * t.dim() - 1) + ")");
  }
}

NPWignerTable::NPWignerTable(PhaseGrid grid, Truncation t, RMatrix values)
    : grid_(grid), trunc_(t), values_(std::move(values)) {
  if (values_.rows() != grid_.size() || values_.cols() != trunc_.dim()) {
    throw ValidationError("NPWignerTable: values must be M x D");
  }
  if (!values_.allFinite()) throw ValidationError("NPWignerTable: non-finite value");
}

double NPWignerTable::total_probability() const { return grid_.weight() * values_.sum(); }

ClassicalSymbol::ClassicalSymbol(PhaseGrid grid, Truncation t, CMatrix values)
    : grid_(grid), trunc_(t), values_(std::move(values)) {
  if (values_.rows() != grid_.size() || values_.cols() != trunc_.dim()) {
    throw ValidationError("ClassicalSymbol: values must be M x D");
  }
  if (!values_.allFinite()) throw ValidationError("ClassicalSymbol: non-finite value");
}

ClassicalSymbol ClassicalSymbol::from_function(const PhaseGrid& grid, Truncation t,
                                               const std::function<cplx(double, int)>& f) {
  CMatrix values(grid.size(), t.dim());
  for (int j = 0; j < grid.size(); ++j) {
    for (int n = 0; n < t.dim(); ++n) values(j, n) = f(grid.node(j), n);
  }
  return ClassicalSymbol(grid, t, std::move(values));
}

OperatorMatrix quantizer_matrix(Truncation t, double phi, int n) {
  const int d = t.dim();
  if (n < 0 || n >= d) {
    throw DomainError("quantizer index " + std::to_string(n) + " outside [0, " +
                      std::to_string(d) + ")");
  }
  CMatrix omega = CMatrix::Zero(d, d);
  const cplx n_phi = phase_overlap(n, phi);
  // Row n and column n are conjugates, written once so Hermiticity is exact.
  for (int k = 0; k < d; ++k) {
    if (k == n) continue;
    const cplx z = std::numbers::pi * n_phi * std::conj(phase_overlap(k, phi));
    omega(n, k) = z;
    omega(k, n) = std::conj(z);
  }
  omega(n, n) = 2.0 * std::numbers::pi * std::norm(n_phi);
  return OperatorMatrix(std::move(omega));
}

NPWignerTable npw_from_density(const DensityMatrix& rho, const PhaseGrid& grid) {
  const Truncation t = rho.truncation();
  grid.require_compatible(t);
  const int d = t.dim();
  const int m_points = grid.size();
  const CMatrix& r = rho.matrix();

  // Column n carries frequencies p = n - k; with phi_j = -pi + 2 pi j / M,
  // e^{i p phi_j} = (-1)^p e^{2 pi i p j / M}.
  RMatrix values(m_points, d);
  for (int n = 0; n < d; ++n) {
    detail::CBuffer spectrum(m_points, cplx(0.0, 0.0));
    for (int k = 0; k < d; ++k) {
      const int p = n - k;
      spectrum[detail::wrap(p, m_points)] += detail::parity(p) * r(k, n);
    }
    const detail::CBuffer samples = detail::dft_backward(spectrum);
    for (int j = 0; j < m_points; ++j) values(j, n) = samples[j].real() / kTwoPi;
  }
  return NPWignerTable(grid, t, std::move(values));
}

RVector marginal_number(const NPWignerTable& table) {
  return table.grid().weight() * table.values().colwise().sum().transpose();
}

RVector marginal_phase(const NPWignerTable& table) {
  return table.values().rowwise().sum();
}

cplx expectation_symbol(const NPWignerTable& table, const ClassicalSymbol& f) {
  require_matching(table.grid(), table.truncation(), f.grid(), f.truncation(),
                   "expectation_symbol");
  cplx acc = 0.0;
  const RMatrix& v = table.values();
  const CMatrix& fv = f.values();
  for (int j = 0; j < v.rows(); ++j) {
    for (int n = 0; n < v.cols(); ++n) acc += fv(j, n) * v(j, n);
  }
  return table.grid().weight() * acc;
}

OperatorMatrix weyl_quantize(const ClassicalSymbol& f, Diagnostics* diag) {
  const Truncation t = f.truncation();
  f.grid().require_compatible(t);
  const int d = t.dim();
  double high_band = 0.0;
  const CMatrix coef = column_coefficients(f.values(), d, &high_band);
  if (diag != nullptr && high_band > 1e-8) {
    std::ostringstream os;
    os.precision(3);
    os << "symbol is not resolved by the phase grid: " << high_band
       << " of a column's spectral energy sits in the aliasing band";
    diag->warnings.push_back(os.str());
  }
  CMatrix out(d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      const int m = k - j;
      out(j, k) = 0.5 * (coef(m + d - 1, j) + coef(m + d - 1, k));
    }
  }
  return OperatorMatrix(std::move(out));
}

}  // namespace numphase
