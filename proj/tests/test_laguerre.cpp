#include "numphase/laguerre.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "numphase/errors.hpp"
#include "oracle_values.hpp"

namespace numphase {
namespace {

// Explicit series sum_i (-1)^i C(n+a, n-i) x^i / i!, fine for small n.
// Long double with exact integer binomials keeps the alternating sum honest.
double series(int n, int a, double x) {
  long double sum = 0.0L;
  long double binom = 1.0L;  // C(n+a, n)
  for (int i = 1; i <= n; ++i) binom = binom * (a + i) / i;
  long double term_x = 1.0L;  // x^i / i!
  for (int i = 0; i <= n; ++i) {
    sum += (i % 2 == 0 ? 1.0L : -1.0L) * binom * term_x;
    binom = binom * (n - i) / (a + i + 1);
    term_x = term_x * x / (i + 1);
  }
  return static_cast<double>(sum);
}

TEST(Laguerre, Base) {
  for (int a : {0, 1, 5, 30}) {
    for (double x : {0.0, 0.7, 12.0}) EXPECT_EQ(laguerre_assoc(0, a, x), 1.0);
  }
}

TEST(Laguerre, AtZeroIsBinomial) {
  EXPECT_NEAR(laguerre_assoc(2, 1, 0.0), 3.0, 1e-15);
  for (int n = 0; n < 15; ++n) {
    for (int a = 0; a < 6; ++a) {
      const double binom = std::round(std::exp(std::lgamma(n + a + 1.0) - std::lgamma(n + 1.0) - std::lgamma(a + 1.0)));
      EXPECT_NEAR(laguerre_assoc(n, a, 0.0), binom, 1e-12 * binom) << n << "," << a;
    }
  }
}

TEST(Laguerre, ExplicitPolynomial) {
  EXPECT_NEAR(laguerre_assoc(2, 0, 1.0), -0.5, 1e-15);
  for (int n = 0; n <= 8; ++n) {
    for (int a : {0, 2, 7}) {
      for (double x : {0.3, 1.9, 4.4}) {
        const double ref = series(n, a, x);
        EXPECT_NEAR(laguerre_assoc(n, a, x), ref, 1e-12 * std::max(1.0, std::abs(ref))) << n << "," << a << "," << x;
      }
    }
  }
}

TEST(Laguerre, HighPrecisionOracle) {
  for (const auto& c : testing::kLaguerreCases) {
    EXPECT_NEAR(laguerre_assoc(c.n, c.a, c.x), c.value, 1e-11 * std::max(1.0, std::abs(c.value)))
        << c.n << "," << c.a << "," << c.x;
  }
}

TEST(Laguerre, SequenceMatchesPointwise) {
  std::vector<double> seq(25);
  laguerre_assoc_sequence(3, 5.5, seq);
  for (int k = 0; k < 25; ++k) EXPECT_DOUBLE_EQ(seq[k], laguerre_assoc(k, 3, 5.5));
}

TEST(Laguerre, RejectsNegativeArguments) {
  EXPECT_THROW(laguerre_assoc(-1, 0, 1.0), DomainError);
  EXPECT_THROW(laguerre_assoc(0, -1, 1.0), DomainError);
  std::vector<double> seq(3);
  EXPECT_THROW(laguerre_assoc_sequence(-2, 1.0, seq), DomainError);
}

}  // namespace
}  // namespace numphase
