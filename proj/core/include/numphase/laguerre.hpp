#pragma once

#include <span>

namespace numphase {

// Associated Laguerre polynomial L_n^{(a)}(x) by the three-term recurrence
//   (k+1) L_{k+1} = (2k + 1 + a - x) L_k - (k + a) L_{k-1}.
double laguerre_assoc(int n, int a, double x);

// Fills out[k] = L_k^{(a)}(x) for k = 0..out.size()-1.
void laguerre_assoc_sequence(int a, double x, std::span<double> out);

}  // namespace numphase
