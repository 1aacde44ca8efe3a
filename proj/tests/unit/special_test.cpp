#include "oracles.hpp"

#include "tssb/errors.hpp"
#include "tssb/special.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace tssb;

namespace {
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
}

TEST(Digamma, ClosedFormValues) {
  EXPECT_NEAR(digamma(1.0), -kEulerGamma, 1e-15);
  EXPECT_NEAR(digamma(0.5), -kEulerGamma - 2.0 * std::log(2.0), 1e-15);
  // psi(n) = H_{n-1} - gamma
  double harmonic = 0.0;
  for (int n = 2; n <= 40; ++n) {
    harmonic += 1.0 / (n - 1);
    EXPECT_NEAR(digamma(n), harmonic - kEulerGamma,
                1e-12 * std::abs(harmonic - kEulerGamma));
  }
}

TEST(Digamma, MatchesBinetIntegral) {
  for (double x : {0.05, 0.3, 0.5, 1.0, 1.7, 2.5, 7.25, 30.0, 512.0, 1e5}) {
    const double oracle = tssb::testing::digamma_by_integral(x);
    EXPECT_NEAR(digamma(x), oracle, 1e-12 * std::max(1.0, std::abs(oracle)))
        << "x=" << x;
  }
}

TEST(Digamma, RecurrenceAndDomain) {
  for (double x : {0.01, 0.9, 3.3, 100.5})
    EXPECT_NEAR(digamma(x + 1.0), digamma(x) + 1.0 / x,
                1e-12 * std::abs(digamma(x + 1.0)) + 1e-13);
  EXPECT_THROW((void)digamma(0.0), DomainError);
  EXPECT_THROW((void)digamma(-1.5), DomainError);
  EXPECT_THROW((void)log_gamma(0.0), DomainError);
}

TEST(LogGamma, KnownValues) {
  EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(M_PI), 1e-15);
  double log_fact = 0.0;
  for (int n = 2; n < 60; ++n) {
    log_fact += std::log(n - 1.0);
    EXPECT_NEAR(log_gamma(n), log_fact, 1e-13 * log_fact);
  }
}

TEST(LogMultigamma, ReducesToProductOfGammas) {
  for (int p : {1, 2, 3, 5}) {
    for (double x : {2.6, 4.0, 11.3}) {
      double direct = 0.25 * p * (p - 1) * std::log(M_PI);
      for (int j = 1; j <= p; ++j)
        direct += std::lgamma(x + 0.5 * (1 - j));
      EXPECT_NEAR(log_multigamma(x, p), direct, 1e-12 * std::abs(direct));
    }
  }
  EXPECT_NEAR(multi_digamma(5.0, 3),
              digamma(2.5) + digamma(2.0) + digamma(1.5), 1e-14);
}

TEST(LogSumExp, StableAndExact) {
  EXPECT_NEAR(logsumexp(std::log(2.0), std::log(3.0)), std::log(5.0), 1e-15);
  EXPECT_NEAR(logsumexp(1000.0, 1000.0), 1000.0 + std::log(2.0), 1e-12);
  EXPECT_NEAR(logsumexp(-1000.0, -1001.0), -1000.0 + std::log1p(std::exp(-1.0)),
              1e-12);
  const double ninf = -std::numeric_limits<double>::infinity();
  EXPECT_EQ(logsumexp(ninf, 3.0), 3.0);
  EXPECT_EQ(logsumexp(ninf, ninf), ninf);
  const std::vector<double> v = {0.1, -2.0, 5.0, ninf};
  const double expected = std::log(std::exp(0.1) + std::exp(-2.0) + std::exp(5.0));
  EXPECT_NEAR(logsumexp(std::span<const double>(v)), expected, 1e-14);
  EXPECT_EQ(logsumexp(std::span<const double>()), ninf);
}

TEST(XLogY, ZeroConvention) {
  EXPECT_EQ(xlogy(0.0, 0.0), 0.0);
  EXPECT_NEAR(xlogy(2.0, std::exp(1.5)), 3.0, 1e-15);
}
