#pragma once

#include "numphase/fock.hpp"

namespace numphase {

// Coherent-type states lose the weight beyond |D-1>. By default a state whose
// discarded tail exceeds max_tail is rejected; allow_excess keeps it (still
// renormalized) and the caller reads StateVector::tail_weight().
struct TailPolicy {
  double max_tail = 1e-10;
  bool allow_excess = false;
};

// zeta = |zeta| e^{i varphi}, |zeta| < 1.
class CoherentPhaseParam {
 public:
  explicit CoherentPhaseParam(cplx zeta);
  static CoherentPhaseParam from_polar(double modulus, double phase);

  cplx zeta() const noexcept { return zeta_; }
  double modulus() const { return std::abs(zeta_); }
  double phase() const { return std::arg(zeta_); }

 private:
  cplx zeta_;
};

StateVector number_state(Truncation t, int n);

// c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!), renormalized after truncation.
StateVector coherent_state(Truncation t, cplx alpha, const TailPolicy& policy = {});

// c_n = sqrt(1 - |zeta|^2) zeta^n, renormalized after truncation.
StateVector coherent_phase_state(Truncation t, const CoherentPhaseParam& p,
                                 const TailPolicy& policy = {});

// rho_nn = nbar^n / (1 + nbar)^{n+1}, renormalized over the truncated range.
DensityMatrix thermal_density(Truncation t, double nbar, const TailPolicy& policy = {});

// <n|phi> = e^{i n phi} / sqrt(2 pi). Phase kets are not normalizable, so
// only their overlaps with Fock states are exposed.
cplx phase_overlap(int n, double phi);

// Poisson weight beyond the truncation, sum_{n >= D} e^{-x} x^n / n!.
double poisson_tail(int dim, double mean);

}  // namespace numphase
