#include "mibench/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

namespace mibench {

double digamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw std::domain_error("digamma: argument must be positive and finite, got " +
                            std::to_string(x));
  }
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Bernoulli terms B_2k / (2k x^2k), k = 1..8.
  const double tail =
      inv2 * (1.0 / 12 -
      inv2 * (1.0 / 120 -
      inv2 * (1.0 / 252 -
      inv2 * (1.0 / 240 -
      inv2 * (1.0 / 132 -
      inv2 * (691.0 / 32760 -
      inv2 * (1.0 / 12 -
      inv2 * (3617.0 / 8160))))))));
  return shift + std::log(x) - 0.5 * inv - tail;
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("log_beta: arguments must be positive and finite");
  }
  // boost's lgamma does not touch the global signgam, unlike ::lgamma.
  using boost::math::lgamma;
  return lgamma(a) + lgamma(b) - lgamma(a + b);
}

namespace {

void require_correlation(double rho) {
  if (!(std::abs(rho) < 1.0)) {
    throw std::domain_error("mutual information diverges unless |rho| < 1 (rho = " +
                            std::to_string(rho) + ")");
  }
}

}  // namespace

AnalyticMI analytic_mi_gauss(double rho) {
  require_correlation(rho);
  return {-0.5 * std::log1p(-rho * rho), Family::normal, rho, 0.0};
}

AnalyticMI analytic_mi_student(double nu, double rho) {
  require_correlation(rho);
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw std::domain_error("Student-t degrees of freedom must be positive (nu = " +
                            std::to_string(nu) + ")");
  }
  const double gauss = analytic_mi_gauss(rho).value;
  const double log_norm = 0.5 * std::log(nu / (2.0 * std::numbers::pi)) + log_beta(0.5 * nu, 0.5);
  const double value = gauss + 2.0 * log_norm - (2.0 + nu) / nu +
                       (1.0 + nu) * (digamma(0.5 * (nu + 1.0)) - digamma(0.5 * nu));
  return {value, Family::student_t, rho, nu};
}

}  // namespace mibench
