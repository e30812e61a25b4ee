#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mibench/analytic.hpp"
#include "mibench/types.hpp"

namespace mibench {

/// Parameters of a bivariate family. `mu` and `sigma` describe the underlying
/// normal (for lognormal, before exponentiation) or the location/scale of the
/// Student-t. `rho` is the off-diagonal of the unit-diagonal correlation
/// (normal, lognormal) or scale (Student-t) matrix.
struct DistributionSpec {
  Family family = Family::normal;
  std::array<double, 2> mu{0.0, 0.0};
  std::array<double, 2> sigma{1.0, 1.0};
  double rho = 0.0;
  double nu = 3.0;
  Transform transform = Transform::none;

  /// Throws std::invalid_argument naming the violated domain.
  void validate() const;

  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

/// N paired observations stored column-wise.
struct Sample {
  std::vector<double> x;
  std::vector<double> y;
  std::string provenance;

  std::size_t size() const noexcept { return x.size(); }
  bool empty() const noexcept { return x.empty(); }
};

/// Draws `n` pairs from `spec` and applies `spec.transform` to the raw
/// coordinates. Bit-identical for identical (spec, n, seed).
Sample draw_sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);

/// Applies `transform` elementwise to both coordinates; pair order is kept.
/// cube_root is the sign-preserving real root.
Sample apply_transform(Sample sample, Transform transform);
double apply_transform(double value, Transform transform);

/// Ground-truth MI of `spec`. The transform is ignored: every supported
/// transform is a per-coordinate bijection.
AnalyticMI analytic_mi(const DistributionSpec& spec);

/// Sample Pearson correlation. Throws std::invalid_argument for n < 2 or a
/// constant coordinate.
double pearson_correlation(const Sample& sample);

}  // namespace mibench
