#pragma once

#include <vector>

#include "numphase/fock.hpp"
#include "numphase/wigner.hpp"

namespace numphase {

// Tolerances for density matrices recovered by phase-space quadrature.
inline Tolerances quadrature_tolerances() {
  Tolerances tol;
  tol.trace = 1e-4;
  tol.psd = 1e-4;
  return tol;
}

// Ordering parameter of the Cahill-Glauber family: -1 Husimi Q, 0 Wigner,
// +1 Glauber-Sudarshan P.
class SParameter {
 public:
  explicit SParameter(double s);
  double value() const noexcept { return s_; }

 private:
  double s_;
};

// Gauss-Legendre radial nodes on [0, r_max] times a uniform angular grid on
// [-pi, pi). The area element is |alpha| d|alpha| dgamma.
class PolarGrid {
 public:
  // Throws QuadratureError if the unit Gaussian e^{-|alpha|^2}/pi does not
  // integrate to one within 1e-8.
  PolarGrid(double r_max, int n_r, int m_gamma);

  // r_max = max(1.5 sqrt(D), 6), n_r = 200, m_gamma = smallest power of two >= 4D.
  static PolarGrid default_for(Truncation t);

  double r_max() const noexcept { return r_max_; }
  int radial_size() const noexcept { return static_cast<int>(radii_.size()); }
  int angular_size() const noexcept { return m_gamma_; }
  double radius(int i) const { return radii_[i]; }
  // Weight for d|alpha| (no Jacobian).
  double radial_weight(int i) const { return radial_weights_[i]; }
  double angle(int q) const;
  double angular_weight() const;
  // Full d^2 alpha weight of node (i, q).
  double area_weight(int i) const { return radial_weights_[i] * radii_[i] * angular_weight(); }
  cplx point(int i, int q) const { return std::polar(radius(i), angle(q)); }

  friend bool operator==(const PolarGrid& a, const PolarGrid& b) {
    return a.r_max_ == b.r_max_ && a.radial_size() == b.radial_size() &&
           a.m_gamma_ == b.m_gamma_;
  }

 private:
  double r_max_;
  int m_gamma_;
  std::vector<double> radii_;
  std::vector<double> radial_weights_;
};

// W^(s)(alpha) sampled on a polar grid; values(i, q) at radius i, angle q.
class CGTable {
 public:
  CGTable(PolarGrid grid, SParameter s, CMatrix values);

  const PolarGrid& grid() const noexcept { return grid_; }
  double s() const noexcept { return s_.value(); }
  const CMatrix& values() const noexcept { return values_; }
  cplx operator()(int i, int q) const { return values_(i, q); }

  // int W d^2 alpha over the grid (real part).
  double normalization() const;
  double max_imag() const;

 private:
  PolarGrid grid_;
  SParameter s_;
  CMatrix values_;
};

// <j|T^(-s_eff)(alpha)|k>. s_eff = 1 is the Husimi kernel |alpha><alpha|;
// s_eff <= -1 or > 1 is rejected. Callers wanting T^(sigma) pass s_eff = -sigma.
cplx t_matrix_element(int j, int k, cplx alpha, double s_eff);

// All <j|T^(-s_eff)(alpha)|k> for j, k < D.
CMatrix t_matrix(Truncation t, cplx alpha, double s_eff);

// W^(s)(alpha) = (1/pi) Tr{rho T^(s)(alpha)}; requires s < 1.
CGTable w_s_from_density(const DensityMatrix& rho, const PolarGrid& grid, SParameter s);

// rho = int W^(s)(alpha) T^(-s)(alpha) d^2 alpha by polar quadrature, Hermitized.
// Requires s > -1. Throws QuadratureError when |Tr rho - 1| > 1e-4.
CMatrix density_from_w_s_matrix(const CGTable& table, Truncation t);

// As above, validated as a density matrix with quadrature-level tolerances
// (trace and positivity to 1e-4 unless overridden).
DensityMatrix density_from_w_s(const CGTable& table, Truncation t,
                               const Tolerances& tol = quadrature_tolerances());

enum class BridgePath {
  kDirect,    // kernel quadrature of W^(s) against the number-phase kernel
  kComposed,  // density_from_w_s followed by npw_from_density
};

// rho_W from W^(s), -1 < s < 1.
NPWignerTable npw_from_w_s(const CGTable& table, const PhaseGrid& phase_grid, Truncation t,
                           BridgePath path = BridgePath::kDirect);

// rho_W from a smooth sampled P function (s tag ignored). Rejects input whose
// integral deviates from one by more than 1e-6.
NPWignerTable npw_from_p(const CGTable& p_values, const PhaseGrid& phase_grid, Truncation t);

// Smooth P function of a thermal state, e^{-|alpha|^2/nbar} / (pi nbar), nbar > 0.
CGTable thermal_p_function(const PolarGrid& grid, double nbar);

// Photon-number distribution from a Wigner table (s = 0) via the radial
// overlap with the number-state Wigner functions.
RVector photon_distribution_from_wigner(const CGTable& wigner, Truncation t);

}  // namespace numphase
