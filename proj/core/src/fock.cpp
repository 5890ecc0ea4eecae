#include "numphase/fock.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <string>

namespace numphase {

Truncation::Truncation(int dim) : dim_(dim) {
  if (dim < 1) {
    throw DomainError("truncation dimension must be positive, got " + std::to_string(dim));
  }
}

void require_same_truncation(Truncation a, Truncation b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw DomainError(os.str());
  }
}

OperatorMatrix::OperatorMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw ValidationError("operator matrix must be square and non-empty");
  }
  if (!entries_.allFinite()) {
    throw ValidationError("operator matrix has non-finite entries");
  }
}

OperatorMatrix OperatorMatrix::adjoint() const { return OperatorMatrix(entries_.adjoint()); }

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_truncation(a.truncation(), b.truncation(), "operator product");
  return OperatorMatrix(a.entries_ * b.entries_);
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_truncation(a.truncation(), b.truncation(), "operator sum");
  return OperatorMatrix(a.entries_ + b.entries_);
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_truncation(a.truncation(), b.truncation(), "operator difference");
  return OperatorMatrix(a.entries_ - b.entries_);
}

StateVector::StateVector(CVector amplitudes, double tail_weight)
    : amplitudes_(std::move(amplitudes)), tail_weight_(tail_weight) {
  if (amplitudes_.size() == 0) throw ValidationError("state vector must be non-empty");
  if (!amplitudes_.allFinite()) throw ValidationError("state vector has non-finite amplitudes");
}

bool DensityInvariants::ok(const Tolerances& tol) const {
  return finite && hermiticity_error <= tol.herm && trace_error <= tol.trace &&
         min_eigenvalue >= -tol.psd;
}

DensityInvariants inspect_density(const CMatrix& rho) {
  DensityInvariants inv;
  if (!rho.allFinite()) {
    inv.finite = false;
    return inv;
  }
  inv.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  inv.trace_error = std::abs(rho.trace() - cplx(1.0, 0.0));
  const CMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  inv.min_eigenvalue = es.eigenvalues().minCoeff();
  return inv;
}

DensityMatrix DensityMatrix::from_matrix(CMatrix rho, const Tolerances& tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw ValidationError("density matrix must be square and non-empty");
  }
  const DensityInvariants inv = inspect_density(rho);
  if (!inv.ok(tol)) {
    std::ostringstream os;
    os.precision(3);
    os << "density matrix violates invariants: finite=" << inv.finite
       << " hermiticity_error=" << inv.hermiticity_error << " trace_error=" << inv.trace_error
       << " min_eigenvalue=" << inv.min_eigenvalue;
    throw ValidationError(os.str());
  }
  return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi, const Tolerances& tol) {
  const CVector& c = psi.amplitudes();
  return from_matrix(c * c.adjoint(), tol);
}

DensityMatrix DensityMatrix::unchecked(CMatrix rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw ValidationError("density matrix must be square and non-empty");
  }
  return DensityMatrix(std::move(rho));
}

OperatorMatrix annihilation_matrix(Truncation t) {
  const int d = t.dim();
  CMatrix a = CMatrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return OperatorMatrix(std::move(a));
}

OperatorMatrix creation_matrix(Truncation t) { return annihilation_matrix(t).adjoint(); }

OperatorMatrix number_matrix(Truncation t) {
  const int d = t.dim();
  CMatrix n = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
  return OperatorMatrix(std::move(n));
}

OperatorMatrix displacement_matrix(Truncation t, cplx xi, Diagnostics* diag) {
  const int d = t.dim();
  if (diag != nullptr && std::norm(xi) > d / 4.0) {
    std::ostringstream os;
    os << "displacement |xi|^2 = " << std::norm(xi) << " exceeds D/4 = " << d / 4.0
       << "; truncation artifacts are significant";
    diag->warnings.push_back(os.str());
  }
  // G = xi a^dag - conj(xi) a is anti-Hermitian, so H = iG is Hermitian and
  // exp(G) = V exp(-i Lambda) V^dag from the eigendecomposition of H.
  const CMatrix a = annihilation_matrix(t).matrix();
  const CMatrix gen = xi * a.adjoint() - std::conj(xi) * a;
  const CMatrix h = cplx(0.0, 1.0) * gen;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
  const RVector& lambda = es.eigenvalues();
  CVector phases(d);
  for (int k = 0; k < d; ++k) phases(k) = std::polar(1.0, -lambda(k));
  const CMatrix& v = es.eigenvectors();
  return OperatorMatrix(v * phases.asDiagonal() * v.adjoint());
}

DensityMatrix random_density(Truncation t, std::uint64_t seed) {
  const int d = t.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix g(d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(j, k) = cplx(re, im);
    }
  }
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix::from_matrix(std::move(rho));
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) { return (a - b).norm(); }

}  // namespace numphase
