#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mibench/estimators.hpp"
#include "mibench/sampling.hpp"

namespace mibench {

/// Sample sizes used when no grid is given.
std::vector<std::size_t> default_n_grid();

/// Replicate count used when none is configured: 1000 up to N = 1e4,
/// 100 up to N = 1e5, 10 beyond.
std::size_t default_replicates(std::size_t n);

struct ExperimentConfig {
  DistributionSpec spec;
  EstimatorConfig estimator;
  std::vector<std::size_t> n_grid = default_n_grid();
  std::optional<std::size_t> replicates;  // unset: default_replicates(N)
  std::uint64_t master_seed = 0;
  std::pair<double, double> quantiles{0.05, 0.95};
  unsigned workers = 1;  // parallelism only; never affects results

  void validate() const;
  std::size_t replicates_for(std::size_t n) const;
};

/// Ensemble statistics for one sample size.
struct CellResult {
  std::size_t n = 0;
  std::vector<double> estimates;  // replicate order
  double mean = 0.0;
  double q_lo = 0.0;
  double q_hi = 0.0;
  double analytic = 0.0;
  double wall_seconds = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<CellResult> cells;
};

/// Draws R fresh samples per grid point, one substream per (N, replicate),
/// and summarizes the estimates by mean and the configured quantiles.
/// Results do not depend on `config.workers`.
ExperimentResult run_ci_experiment(const ExperimentConfig& config);

/// Order statistic with linear interpolation at h = (n - 1) p.
/// Throws std::invalid_argument on empty input or p outside [0, 1].
double quantile(std::span<const double> values, double p);

/// Fills `indices` (length n) with the pair indices of bootstrap replicate `b`.
using Resampler = std::function<void(std::size_t b, std::span<std::size_t> indices)>;

/// Mean estimate over `B` pair-bootstrap resamples drawn with replacement.
/// Repeated pairs are handled by `estimator.duplicates`.
double bootstrap_mi(const Sample& sample, std::size_t B, const EstimatorConfig& estimator,
                    std::uint64_t seed, unsigned workers = 1);
double bootstrap_mi(const Sample& sample, std::size_t B, const EstimatorConfig& estimator,
                    const Resampler& resampler, unsigned workers = 1);

/// Ordinary least squares of mean estimate against 1/N.
struct BiasFit {
  double intercept = 0.0;  // extrapolated MI as 1/N -> 0
  double slope = 0.0;
  double rms_residual = 0.0;
  std::vector<std::pair<double, double>> points;  // (1/N, mean)
};

/// Throws std::invalid_argument with fewer than 3 distinct N.
BiasFit bias_extrapolate(std::span<const std::pair<std::size_t, double>> n_and_mean);
BiasFit bias_extrapolate(const ExperimentResult& result);

/// One row of an MI-versus-data-length curve on a fixed sample.
struct LengthPoint {
  std::size_t n = 0;
  double pearson = 0.0;
  double gaussian_mi = 0.0;  // -1/2 ln(1 - rho^2) at the sample correlation
  double estimate = 0.0;     // bootstrap mean over the first n pairs
};

/// Evaluates the leading prefixes of `sample` of the given lengths.
std::vector<LengthPoint> length_curve(const Sample& sample, std::span<const std::size_t> lengths,
                                      std::size_t B, const EstimatorConfig& estimator,
                                      std::uint64_t seed, unsigned workers = 1);

}  // namespace mibench
