#pragma once

#include <functional>

#include "numphase/fock.hpp"

namespace numphase {

// Uniform phase grid phi_j = -pi + 2 pi j / M, j = 0..M-1, weight 2 pi / M.
// Trigonometric polynomials of degree < M are integrated exactly.
class PhaseGrid {
 public:
  explicit PhaseGrid(int points);

  // Smallest power of two >= 4D.
  static PhaseGrid default_for(Truncation t);

  int size() const noexcept { return points_; }
  double node(int j) const;
  double weight() const;

  // Throws DomainError unless M >= 2D - 1.
  void require_compatible(Truncation t) const;

  friend bool operator==(const PhaseGrid&, const PhaseGrid&) = default;

 private:
  int points_;
};

// rho_W(phi_j, n) stored as an M x D real array (row = phase node, column = n).
class NPWignerTable {
 public:
  NPWignerTable(PhaseGrid grid, Truncation t, RMatrix values);

  const PhaseGrid& grid() const noexcept { return grid_; }
  Truncation truncation() const noexcept { return trunc_; }
  int dim() const noexcept { return trunc_.dim(); }
  const RMatrix& values() const noexcept { return values_; }
  double operator()(int j, int n) const { return values_(j, n); }

  // w * sum_{j,n} rho_W(phi_j, n); equals 1 for a trace-one source.
  double total_probability() const;

 private:
  PhaseGrid grid_;
  Truncation trunc_;
  RMatrix values_;
};

// Sampled classical symbol f(phi_j, n) (M x D, complex).
class ClassicalSymbol {
 public:
  ClassicalSymbol(PhaseGrid grid, Truncation t, CMatrix values);

  static ClassicalSymbol from_function(const PhaseGrid& grid, Truncation t,
                                       const std::function<cplx(double phi, int n)>& f);

  const PhaseGrid& grid() const noexcept { return grid_; }
  Truncation truncation() const noexcept { return trunc_; }
  const CMatrix& values() const noexcept { return values_; }

 private:
  PhaseGrid grid_;
  Truncation trunc_;
  CMatrix values_;
};

// Stratonovich-Weyl quantizer pi { |n><n|phi><phi| + |phi><phi|n><n| }.
OperatorMatrix quantizer_matrix(Truncation t, double phi, int n);

// rho_W(phi, n) = (1/2pi) Re sum_k rho_kn e^{i(n-k)phi}, one FFT per Fock column.
NPWignerTable npw_from_density(const DensityMatrix& rho, const PhaseGrid& grid);

// int rho_W(phi, n) dphi = <n|rho|n>.
RVector marginal_number(const NPWignerTable& table);
// sum_n rho_W(phi_j, n) = <phi_j|rho|phi_j>.
RVector marginal_phase(const NPWignerTable& table);

// sum_n int f(phi, n) rho_W(phi, n) dphi.
cplx expectation_symbol(const NPWignerTable& table, const ClassicalSymbol& f);

// (1/2pi) sum_n int f(phi, n) Omega(phi, n) dphi, assembled from per-column
// Fourier coefficients: <j|f|k> = (F_j(k-j) + F_k(k-j)) / 2 with
// F_n(m) = (1/2pi) int f(phi, n) e^{-i m phi} dphi.
// A warning is added when a column carries more than 1e-8 of its spectral
// energy in the modes that would alias into |m| <= D-1.
OperatorMatrix weyl_quantize(const ClassicalSymbol& f, Diagnostics* diag = nullptr);

}  // namespace numphase
