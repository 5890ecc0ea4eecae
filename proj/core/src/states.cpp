#include "numphase/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace numphase {
namespace {

void enforce_tail(double tail, const TailPolicy& policy, const char* what) {
  if (tail > policy.max_tail && !policy.allow_excess) {
    std::ostringstream os;
    os.precision(3);
    os << what << ": truncation discards tail weight " << tail << " > " << policy.max_tail
       << "; increase the dimension or allow the excess explicitly";
    throw DomainError(os.str());
  }
}

}  // namespace

CoherentPhaseParam::CoherentPhaseParam(cplx zeta) : zeta_(zeta) {
  if (!(std::abs(zeta) < 1.0)) {
    throw DomainError("coherent phase state requires |zeta| < 1");
  }
}

CoherentPhaseParam CoherentPhaseParam::from_polar(double modulus, double phase) {
  if (modulus < 0.0 || !(modulus < 1.0)) {
    throw DomainError("coherent phase state requires 0 <= |zeta| < 1");
  }
  return CoherentPhaseParam(std::polar(modulus, phase));
}

StateVector number_state(Truncation t, int n) {
  if (n < 0 || n >= t.dim()) {
    throw DomainError("number state index " + std::to_string(n) + " outside [0, " +
                      std::to_string(t.dim()) + ")");
  }
  CVector c = CVector::Zero(t.dim());
  c(n) = 1.0;
  return StateVector(std::move(c));
}

double poisson_tail(int dim, double mean) {
  if (mean == 0.0) return 0.0;
  // Sum the terms directly instead of 1 - head to avoid cancellation.
  const double log_mean = std::log(mean);
  double tail = 0.0;
  for (int n = dim;; ++n) {
    const double term = std::exp(-mean + n * log_mean - std::lgamma(n + 1.0));
    tail += term;
    if (n > mean && term < 1e-18 * tail) break;
    if (term == 0.0 && n > mean) break;
  }
  return tail;
}

StateVector coherent_state(Truncation t, cplx alpha, const TailPolicy& policy) {
  const int d = t.dim();
  const double r2 = std::norm(alpha);
  const double tail = poisson_tail(d, r2);
  enforce_tail(tail, policy, "coherent state");

  CVector c = CVector::Zero(d);
  if (r2 == 0.0) {
    c(0) = 1.0;
    return StateVector(std::move(c), 0.0);
  }
  const double log_r = 0.5 * std::log(r2);
  const double theta = std::arg(alpha);
  for (int n = 0; n < d; ++n) {
    const double log_mag = -0.5 * r2 + n * log_r - 0.5 * std::lgamma(n + 1.0);
    c(n) = std::polar(std::exp(log_mag), n * theta);
  }
  c /= c.norm();
  return StateVector(std::move(c), tail);
}

StateVector coherent_phase_state(Truncation t, const CoherentPhaseParam& p,
                                 const TailPolicy& policy) {
  const int d = t.dim();
  const double mod = p.modulus();
  const double tail = std::pow(mod * mod, d);
  enforce_tail(tail, policy, "coherent phase state");

  CVector c(d);
  const double head = std::sqrt(1.0 - mod * mod);
  cplx power = 1.0;
  for (int n = 0; n < d; ++n) {
    c(n) = head * power;
    power *= p.zeta();
  }
  c /= c.norm();
  return StateVector(std::move(c), tail);
}

DensityMatrix thermal_density(Truncation t, double nbar, const TailPolicy& policy) {
  if (!(nbar >= 0.0)) throw DomainError("thermal state requires nbar >= 0");
  const int d = t.dim();
  const double ratio = nbar / (1.0 + nbar);
  enforce_tail(std::pow(ratio, d), policy, "thermal state");

  CMatrix rho = CMatrix::Zero(d, d);
  double p = 1.0 / (1.0 + nbar);
  double total = 0.0;
  for (int n = 0; n < d; ++n) {
    rho(n, n) = p;
    total += p;
    p *= ratio;
  }
  rho /= total;
  return DensityMatrix::from_matrix(std::move(rho));
}

cplx phase_overlap(int n, double phi) {
  return std::polar(1.0 / std::sqrt(2.0 * std::numbers::pi), n * phi);
}

}  // namespace numphase
