#include "numphase/phase_ops.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "numphase/states.hpp"
#include "numphase/wigner.hpp"
#include "test_util.hpp"

namespace numphase {
namespace {

using testing::kPi;
using testing::max_abs;

CMatrix diag_of(int d, const std::function<double(int)>& f) {
  CMatrix m = CMatrix::Zero(d, d);
  for (int n = 0; n < d; ++n) m(n, n) = f(n);
  return m;
}

CMatrix power(const CMatrix& m, int k) {
  CMatrix out = CMatrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

// (n+lo)(n+lo+1)...(n+hi) as a diagonal; empty range gives the identity.
CMatrix rising(int d, int lo, int hi) {
  return diag_of(d, [&](int n) {
    double p = 1.0;
    for (int i = lo; i <= hi; ++i) p *= n + i;
    return p;
  });
}

CMatrix sqrt_rising(int d, int lo, int hi) {
  CMatrix r = rising(d, lo, hi);
  for (int n = 0; n < d; ++n) r(n, n) = std::sqrt(r(n, n).real());
  return r;
}

TEST(SgLower, Structure) {
  const CMatrix e2 = sg_lower(Truncation(2)).matrix();
  EXPECT_EQ(e2(0, 1), cplx(1.0));
  EXPECT_EQ(e2(0, 0) + e2(1, 0) + e2(1, 1), cplx(0.0));

  const Truncation t(6);
  const CMatrix e = sg_lower(t).matrix();
  EXPECT_EQ(max_abs(CMatrix(e * number_state(t, 0).amplitudes())), 0.0);
  for (int n = 1; n < 6; ++n) {
    const CVector v = e * number_state(t, n).amplitudes();
    EXPECT_EQ(max_abs(CMatrix(v - number_state(t, n - 1).amplitudes())), 0.0);
  }
}

TEST(SgLower, ShiftsFunctionsOfNumber) {
  const int d = 16;
  const CMatrix e = sg_lower(Truncation(d)).matrix();
  const CMatrix f = diag_of(d, [](int n) { return double(n) * n; });
  const CMatrix f1 = diag_of(d, [](int n) { return double(n + 1) * (n + 1); });
  EXPECT_EQ(max_abs(valid_block(e * f - f1 * e, d - 1)), 0.0);
  // Conjugate relation: E^dag f(n+1) = f(n) E^dag.
  const CMatrix ed = sg_raise(Truncation(d)).matrix();
  EXPECT_EQ(max_abs(valid_block(ed * f1 - f * ed, d - 1)), 0.0);
}

TEST(SgRaise, ActionAndUnitarity) {
  const int d = 16;
  const Truncation t(d);
  const CMatrix e = sg_lower(t).matrix();
  const CMatrix ed = sg_raise(t).matrix();
  EXPECT_EQ(max_abs(ed - e.adjoint()), 0.0);
  for (int n = 0; n + 1 < d; ++n) {
    const CVector v = ed * number_state(t, n).amplitudes();
    EXPECT_EQ(max_abs(CMatrix(v - number_state(t, n + 1).amplitudes())), 0.0);
  }
  EXPECT_EQ(max_abs(valid_block(e * ed, d - 1) - CMatrix::Identity(d - 1, d - 1)), 0.0);
  CMatrix proj = CMatrix::Identity(d, d);
  proj(0, 0) = 0.0;
  EXPECT_EQ(max_abs(ed * e - proj), 0.0);
}

TEST(SgPowerProduct, Cases) {
  const int d = 16;
  const Truncation t(d);
  EXPECT_EQ(max_abs(sg_power_product(t, 0, 0).matrix() - CMatrix::Identity(d, d)), 0.0);
  EXPECT_EQ(max_abs(valid_block(sg_power_product(t, 1, 1).matrix(), d - 1) -
                    CMatrix::Identity(d - 1, d - 1)),
            0.0);
  EXPECT_EQ(max_abs(valid_block(sg_power_product(t, 2, 1).matrix() - sg_lower(t).matrix(), d - 2)), 0.0);
  EXPECT_THROW(sg_power_product(t, 8, 8), DomainError);
  EXPECT_THROW(sg_power_product(t, -1, 0), DomainError);
}

TEST(SgPowerProduct, MatchesShiftOnValidBlock) {
  const int d = 16;
  const Truncation t(d);
  const CMatrix e = sg_lower(t).matrix();
  const CMatrix ed = sg_raise(t).matrix();
  for (int k = 0; k <= 4; ++k) {
    for (int m = 0; m <= 4; ++m) {
      const CMatrix shift = k >= m ? power(e, k - m) : power(ed, m - k);
      const int block = d - std::max(k, m);
      EXPECT_EQ(max_abs(valid_block(sg_power_product(t, k, m).matrix() - shift, block)), 0.0)
          << k << "," << m;
    }
  }
}

TEST(PolarDecomposition, ExactOnFullMatrices) {
  const int d = 16;
  const Truncation t(d);
  const CMatrix a = annihilation_matrix(t).matrix();
  const CMatrix ad = creation_matrix(t).matrix();
  const CMatrix e = sg_lower(t).matrix();
  const CMatrix ed = sg_raise(t).matrix();
  const CMatrix sqrt_n = diag_of(d, [](int n) { return std::sqrt(double(n)); });
  const CMatrix sqrt_n1 = diag_of(d, [](int n) { return std::sqrt(n + 1.0); });
  EXPECT_EQ(max_abs(a - sqrt_n1 * e), 0.0);
  EXPECT_EQ(max_abs(a - e * sqrt_n), 0.0);
  EXPECT_EQ(max_abs(ad - ed * sqrt_n1), 0.0);
  EXPECT_EQ(max_abs(ad - sqrt_n * ed), 0.0);
}

TEST(LadderPowers, ProductFormulas) {
  const int d = 16;
  const Truncation t(d);
  const CMatrix a = annihilation_matrix(t).matrix();
  const CMatrix ad = creation_matrix(t).matrix();
  const CMatrix e = sg_lower(t).matrix();
  const CMatrix ed = sg_raise(t).matrix();
  const double tol = 1e-9;  // products of integers up to ~2e5, relative ~1e-15
  for (int m = 1; m <= 4; ++m) {
    const int block = d - m;
    EXPECT_LE(max_abs(valid_block(power(a, m) - sqrt_rising(d, 1, m) * power(e, m), block)), tol);
    EXPECT_LE(max_abs(valid_block(power(ad, m) - power(ed, m) * sqrt_rising(d, 1, m), block)), tol);
    EXPECT_LE(max_abs(valid_block(power(a, m) * power(ad, m) - rising(d, 1, m), block)), tol) << m;
    for (int k = 0; k < m; ++k) {
      const CMatrix lhs_mk = power(a, m) * power(ad, k);
      const CMatrix rhs_mk = rising(d, m - k + 1, m) * sqrt_rising(d, 1, m - k) * power(e, m - k);
      EXPECT_LE(max_abs(valid_block(lhs_mk - rhs_mk, block)), tol) << m << "," << k;
      const CMatrix lhs_km = power(a, k) * power(ad, m);
      const CMatrix rhs_km = power(ed, m - k) * rising(d, m - k + 1, m) * sqrt_rising(d, 1, m - k);
      EXPECT_LE(max_abs(valid_block(lhs_km - rhs_km, block)), tol) << k << "," << m;
    }
  }
}

std::vector<cplx> samples(int points, const std::function<cplx(double)>& f) {
  std::vector<cplx> out(points);
  for (int j = 0; j < points; ++j) out[j] = f(-kPi + 2.0 * kPi * j / points);
  return out;
}

TEST(QuantizePhaseFunction, SpecialCases) {
  const int d = 12;
  const Truncation t(d);
  const int points = 32;
  auto quantize = [&](const std::function<cplx(double)>& f) {
    const std::vector<cplx> v = samples(points, f);
    return quantize_phase_function(t, FourierSymbol::from_samples(v, t)).matrix();
  };
  EXPECT_LE(max_abs(quantize([](double) { return cplx(1.0); }) - CMatrix::Identity(d, d)), 1e-15);
  EXPECT_LE(max_abs(quantize([](double p) { return std::polar(1.0, p); }) - sg_lower(t).matrix()), 1e-15);
  EXPECT_LE(max_abs(quantize([](double p) { return cplx(std::cos(p)); }) -
                    0.5 * (sg_lower(t).matrix() + sg_raise(t).matrix())),
            1e-15);
}

TEST(QuantizePhaseFunction, ExplicitCoefficientsAreToeplitz) {
  const Truncation t(5);
  // f_{-1} = 2i, f_0 = 0.5, f_2 = -1
  const FourierSymbol f(2, {cplx(0.0), cplx(0.0, 2.0), cplx(0.5), cplx(0.0), cplx(-1.0)});
  const CMatrix q = quantize_phase_function(t, f).matrix();
  for (int k = 0; k < 5; ++k) {
    for (int n = 0; n < 5; ++n) EXPECT_EQ(q(k, n), f.coefficient(n - k)) << k << "," << n;
  }
  EXPECT_EQ(f.coefficient(7), cplx(0.0));
}

TEST(QuantizePhaseFunction, RealSymbolGivesHermitianAndIsLinear) {
  const int d = 9;
  const Truncation t(d);
  auto f = [](double p) { return cplx(std::cos(2 * p) + 0.3 * std::sin(p) + 0.1); };
  auto g = [](double p) { return cplx(std::sin(3 * p), std::cos(p)); };
  const std::vector<cplx> fv = samples(20, f);
  const std::vector<cplx> gv = samples(20, g);
  std::vector<cplx> hv(20);
  for (int j = 0; j < 20; ++j) hv[j] = 2.0 * fv[j] - cplx(0.0, 1.5) * gv[j];
  const CMatrix qf = quantize_phase_function(t, FourierSymbol::from_samples(fv, t)).matrix();
  const CMatrix qg = quantize_phase_function(t, FourierSymbol::from_samples(gv, t)).matrix();
  const CMatrix qh = quantize_phase_function(t, FourierSymbol::from_samples(hv, t)).matrix();
  EXPECT_LE(max_abs(qf - qf.adjoint()), 1e-15);
  EXPECT_LE(max_abs(qh - (2.0 * qf - cplx(0.0, 1.5) * qg)), 1e-14);
}

TEST(QuantizePhaseFunction, RejectsAliasingGrid) {
  const Truncation t(8);
  const std::vector<cplx> v = samples(14, [](double) { return cplx(1.0); });
  EXPECT_THROW(FourierSymbol::from_samples(v, t), DomainError);
  const std::vector<cplx> ok = samples(15, [](double) { return cplx(1.0); });
  EXPECT_NO_THROW(FourierSymbol::from_samples(ok, t));
}

TEST(QuantizePhaseFunction, PeggBarnettExpectation) {
  // Tr{rho f} against the phase marginal integrated with f.
  const int d = 10;
  const Truncation t(d);
  const PhaseGrid grid(32);
  auto f = [](double p) { return cplx(std::cos(p) - 0.4 * std::sin(3 * p) + 0.2 * std::cos(5 * p)); };
  const std::vector<cplx> fv = samples(grid.size(), f);
  const CMatrix q = quantize_phase_function(t, FourierSymbol::from_samples(fv, t)).matrix();
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const DensityMatrix rho = random_density(t, seed);
    const RVector marginal = marginal_phase(npw_from_density(rho, grid));
    cplx quad = 0.0;
    for (int j = 0; j < grid.size(); ++j) quad += grid.weight() * fv[j] * marginal(j);
    EXPECT_LE(std::abs((rho.matrix() * q).trace() - quad), 1e-10);
  }
}

}  // namespace
}  // namespace numphase
