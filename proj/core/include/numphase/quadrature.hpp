#pragma once

#include <vector>

namespace numphase {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule mapped to [a, b]; nodes ascending.
QuadratureRule gauss_legendre(int n, double a, double b);

}  // namespace numphase
