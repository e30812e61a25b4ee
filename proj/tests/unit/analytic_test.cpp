#include "mibench/analytic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace mibench {
namespace {

constexpr double kEulerGamma = 0.57721566490153286;

TEST(Digamma, ClosedFormPoints) {
  EXPECT_NEAR(digamma(1.0), -kEulerGamma, 1e-15);
  EXPECT_NEAR(digamma(2.0), 1.0 - kEulerGamma, 1e-15);
  // psi(1/2) = -gamma - 2 ln 2
  EXPECT_NEAR(digamma(0.5), -1.96351002602142348, 1e-14);
  EXPECT_NEAR(digamma(0.5), -kEulerGamma - 2.0 * std::numbers::ln2, 1e-14);
}

TEST(Digamma, MatchesHighPrecisionOracleOverRange) {
  // Log-spaced grid over [1e-3, 1e6] plus points straddling the switch at 6.
  std::vector<double> xs;
  for (int i = 0; i <= 360; ++i) xs.push_back(std::pow(10.0, -3.0 + 9.0 * i / 360.0));
  for (double x : {5.0, 5.999999, 6.0, 6.000001, 7.5, 1e-3, 1e6}) xs.push_back(x);
  for (double x : xs) {
    const double expected = static_cast<double>(oracle::digamma_hp(oracle::HighPrecision(x)));
    EXPECT_NEAR(digamma(x), expected, 1e-12) << "x = " << x;
  }
}

TEST(Digamma, Recurrence) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.1, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    EXPECT_NEAR(digamma(x + 1.0) - digamma(x), 1.0 / x, 1e-10) << "x = " << x;
  }
}

TEST(Digamma, RejectsNonPositive) {
  EXPECT_THROW(digamma(0.0), std::domain_error);
  EXPECT_THROW(digamma(-1.5), std::domain_error);
  EXPECT_THROW(digamma(std::nan("")), std::domain_error);
}

TEST(LogBeta, Examples) {
  EXPECT_NEAR(log_beta(1.0, 1.0), 0.0, 1e-12);
  EXPECT_NEAR(log_beta(1.5, 0.5), std::log(std::numbers::pi / 2.0), 1e-12);
  EXPECT_NEAR(log_beta(1.5, 0.5), 0.45158270528945486, 1e-12);
  // B(2,3) = 1! 2! / 4! = 1/12
  EXPECT_NEAR(log_beta(2.0, 3.0), std::log(1.0 / 12.0), 1e-12);
  EXPECT_NEAR(log_beta(2.0, 3.0), -2.4849066497880004, 1e-12);
}

TEST(LogBeta, AgreesWithHighPrecisionBeta) {
  for (double a : {0.25, 0.5, 1.5, 3.0, 7.25, 40.0}) {
    for (double b : {0.5, 1.0, 2.5, 11.0}) {
      const auto expected = static_cast<double>(
          log(boost::math::beta(oracle::HighPrecision(a), oracle::HighPrecision(b))));
      EXPECT_NEAR(log_beta(a, b), expected, 1e-12) << a << ", " << b;
    }
  }
}

TEST(LogBeta, RejectsNonPositive) {
  EXPECT_THROW(log_beta(0.0, 1.0), std::domain_error);
  EXPECT_THROW(log_beta(1.0, -2.0), std::domain_error);
}

TEST(GaussMI, Examples) {
  EXPECT_NEAR(analytic_mi_gauss(0.5).value, 0.14384103622589045, 1e-15);
  EXPECT_EQ(analytic_mi_gauss(0.0).value, 0.0);
  // In nats; the same correlation gives 0.1241 only in bits.
  EXPECT_NEAR(analytic_mi_gauss(0.3975).value, 0.0859913437851049, 1e-12);
  EXPECT_NEAR(analytic_mi_gauss(0.3975).value / std::numbers::ln2, 0.1240592852381488, 1e-12);
}

TEST(GaussMI, SymmetricAndIncreasing) {
  double previous = -1.0;
  for (int i = 0; i < 100; ++i) {
    const double rho = i / 100.0;
    EXPECT_EQ(analytic_mi_gauss(rho).value, analytic_mi_gauss(-rho).value);
    EXPECT_GT(analytic_mi_gauss(rho).value, previous);
    previous = analytic_mi_gauss(rho).value;
  }
}

TEST(GaussMI, DivergesAtUnitCorrelation) {
  EXPECT_THROW(analytic_mi_gauss(1.0), std::domain_error);
  EXPECT_THROW(analytic_mi_gauss(-1.0), std::domain_error);
  EXPECT_THROW(analytic_mi_gauss(1.5), std::domain_error);
}

TEST(StudentMI, MatchesHighPrecisionEvaluation) {
  // Frozen from the 50-digit oracle: 0.18625244687646021, 0.04241141065056975.
  const auto hp = [](double nu, double rho) {
    return static_cast<double>(
        oracle::student_mi_hp(oracle::HighPrecision(nu), oracle::HighPrecision(rho)));
  };
  EXPECT_NEAR(hp(3.0, 0.5), 0.18625244687646021, 1e-15);
  EXPECT_NEAR(analytic_mi_student(3.0, 0.5).value, 0.18625244687646021, 1e-10);
  EXPECT_NEAR(analytic_mi_student(3.0, 0.0).value, 0.04241141065056975, 1e-10);
  for (double nu : {1.0, 2.0, 4.5, 10.0, 30.0}) {
    for (double rho : {-0.9, -0.2, 0.0, 0.3, 0.75}) {
      EXPECT_NEAR(analytic_mi_student(nu, rho).value, hp(nu, rho), 1e-10) << nu << ", " << rho;
    }
  }
}

TEST(StudentMI, GaussianLimit) {
  EXPECT_NEAR(analytic_mi_student(1e6, 0.5).value, 0.14384103622589045, 1e-4);
  double previous = std::numeric_limits<double>::infinity();
  for (double nu : {10.0, 1e2, 1e3, 1e4}) {
    const double gap =
        std::abs(analytic_mi_student(nu, 0.5).value - analytic_mi_gauss(0.5).value);
    EXPECT_LT(gap, previous) << "nu = " << nu;
    previous = gap;
  }
}

TEST(StudentMI, NonNegativeOnGrid) {
  for (double nu : {1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 100.0, 1e4}) {
    for (double rho = -0.99; rho <= 0.99; rho += 0.03) {
      const auto mi = analytic_mi_student(nu, rho);
      EXPECT_GE(mi.value, 0.0) << nu << ", " << rho;
      EXPECT_TRUE(std::isfinite(mi.value));
      EXPECT_EQ(mi.family, Family::student_t);
    }
  }
}

TEST(StudentMI, DomainErrors) {
  EXPECT_THROW(analytic_mi_student(0.0, 0.5), std::domain_error);
  EXPECT_THROW(analytic_mi_student(-3.0, 0.5), std::domain_error);
  EXPECT_THROW(analytic_mi_student(3.0, 1.0), std::domain_error);
}

}  // namespace
}  // namespace mibench
