#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "numphase/errors.hpp"

namespace numphase {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Centralized invariant tolerances; every validating call accepts an override.
struct Tolerances {
  double herm = 1e-12;
  double trace = 1e-10;
  double psd = 1e-10;
  double norm = 1e-10;
};

// Number of retained Fock states |0>..|D-1>.
class Truncation {
 public:
  explicit Truncation(int dim);

  int dim() const noexcept { return dim_; }

  friend bool operator==(Truncation, Truncation) = default;

 private:
  int dim_;
};

void require_same_truncation(Truncation a, Truncation b, const char* what);

// Square matrix of <j|A|k> on a truncated Fock space.
class OperatorMatrix {
 public:
  explicit OperatorMatrix(CMatrix entries);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  Truncation truncation() const { return Truncation(dim()); }
  const CMatrix& matrix() const noexcept { return entries_; }
  cplx operator()(int j, int k) const { return entries_(j, k); }

  OperatorMatrix adjoint() const;

  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);

 private:
  CMatrix entries_;
};

// Amplitudes c_n = <n|psi>. Coherent-type constructions record the weight
// that fell outside the truncated space before renormalization.
class StateVector {
 public:
  explicit StateVector(CVector amplitudes, double tail_weight = 0.0);

  int dim() const noexcept { return static_cast<int>(amplitudes_.size()); }
  Truncation truncation() const { return Truncation(dim()); }
  const CVector& amplitudes() const noexcept { return amplitudes_; }
  cplx operator[](int n) const { return amplitudes_(n); }
  double norm() const { return amplitudes_.norm(); }
  double tail_weight() const noexcept { return tail_weight_; }

 private:
  CVector amplitudes_;
  double tail_weight_;
};

struct DensityInvariants {
  double hermiticity_error = 0.0;  // max |rho_jk - conj(rho_kj)|
  double trace_error = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;
  bool finite = true;

  bool ok(const Tolerances& tol) const;
};

DensityInvariants inspect_density(const CMatrix& rho);

// Hermitian, positive semidefinite, unit-trace D x D matrix.
class DensityMatrix {
 public:
  // Validates all invariants; throws ValidationError on violation.
  static DensityMatrix from_matrix(CMatrix rho, const Tolerances& tol = {});
  static DensityMatrix from_state(const StateVector& psi, const Tolerances& tol = {});
  // Skips validation. Only for diagnostics and fault injection.
  static DensityMatrix unchecked(CMatrix rho);

  int dim() const noexcept { return static_cast<int>(rho_.rows()); }
  Truncation truncation() const { return Truncation(dim()); }
  const CMatrix& matrix() const noexcept { return rho_; }
  cplx operator()(int j, int k) const { return rho_(j, k); }
  double trace() const { return rho_.trace().real(); }

 private:
  explicit DensityMatrix(CMatrix rho) : rho_(std::move(rho)) {}
  CMatrix rho_;
};

OperatorMatrix annihilation_matrix(Truncation t);
OperatorMatrix creation_matrix(Truncation t);
OperatorMatrix number_matrix(Truncation t);

// exp(xi a^dag - conj(xi) a) on the truncated space. Adds a warning when
// |xi|^2 > D/4, where truncation artifacts become visible.
OperatorMatrix displacement_matrix(Truncation t, cplx xi, Diagnostics* diag = nullptr);

// G G^dag / Tr(G G^dag) for a seeded complex Gaussian G.
DensityMatrix random_density(Truncation t, std::uint64_t seed);

// Frobenius norm of a - b.
double frobenius_distance(const CMatrix& a, const CMatrix& b);

}  // namespace numphase
