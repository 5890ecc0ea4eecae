#include "numphase/laguerre.hpp"

#include <string>

#include "numphase/errors.hpp"

namespace numphase {

void laguerre_assoc_sequence(int a, double x, std::span<double> out) {
  if (a < 0) throw DomainError("laguerre: order must be non-negative, got " + std::to_string(a));
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = 1.0 + a - x;
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    const double kk = static_cast<double>(k);
    out[k + 1] = ((2.0 * kk + 1.0 + a - x) * out[k] - (kk + a) * out[k - 1]) / (kk + 1.0);
  }
}

double laguerre_assoc(int n, int a, double x) {
  if (n < 0) throw DomainError("laguerre: degree must be non-negative, got " + std::to_string(n));
  if (a < 0) throw DomainError("laguerre: order must be non-negative, got " + std::to_string(a));
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + a - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace numphase
