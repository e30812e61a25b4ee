#pragma once

#include "mibench/types.hpp"

namespace mibench {

/// Closed-form mutual information in nats, tagged with the parameters it was
/// computed from. `nu` is zero for the Gaussian family.
struct AnalyticMI {
  double value = 0.0;
  Family family = Family::normal;
  double rho = 0.0;
  double nu = 0.0;
};

/// Digamma function psi(x) for x > 0.
///
/// Uses the upward recurrence psi(x) = psi(x + 1) - 1/x until x >= 6 and then
/// the asymptotic Bernoulli expansion through the x^-16 term. Absolute error
/// stays below 1e-12 on [1e-3, 1e6].
///
/// Throws std::domain_error for x <= 0 or non-finite x.
double digamma(double x);

/// ln B(a, b) computed as lgamma(a) + lgamma(b) - lgamma(a + b).
/// Throws std::domain_error unless a > 0 and b > 0.
double log_beta(double a, double b);

/// -1/2 ln(1 - rho^2). Throws std::domain_error for |rho| >= 1.
AnalyticMI analytic_mi_gauss(double rho);

/// Mutual information of the bivariate Student-t with `nu` degrees of freedom
/// and unit-diagonal scale matrix with off-diagonal `rho`. Reduces to the
/// Gaussian value as nu grows.
AnalyticMI analytic_mi_student(double nu, double rho);

}  // namespace mibench
