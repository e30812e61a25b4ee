#include "mibench/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include <boost/random/uniform_int_distribution.hpp>

#include "mibench/rng.hpp"
#include "parallel.hpp"

namespace mibench {

std::vector<std::size_t> default_n_grid() {
  return {100, 300, 1'000, 3'000, 10'000, 30'000, 100'000};
}

std::size_t default_replicates(std::size_t n) {
  if (n <= 10'000) return 1000;
  if (n <= 100'000) return 100;
  return 10;
}

void ExperimentConfig::validate() const {
  spec.validate();
  estimator.validate();
  if (n_grid.empty()) throw std::invalid_argument("n_grid must not be empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 2) throw std::invalid_argument("every N in n_grid must be at least 2");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
      throw std::invalid_argument("n_grid must be strictly increasing");
    }
  }
  if (replicates && *replicates < 2) throw std::invalid_argument("replicates must be at least 2");
  const auto [lo, hi] = quantiles;
  if (!(lo > 0.0 && lo < hi && hi < 1.0)) {
    throw std::invalid_argument("quantiles must satisfy 0 < lower < upper < 1");
  }
}

std::size_t ExperimentConfig::replicates_for(std::size_t n) const {
  return replicates.value_or(default_replicates(n));
}

double quantile(std::span<const double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile: empty input");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p must lie in [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

ExperimentResult run_ci_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.config = config;
  const double analytic = analytic_mi(config.spec).value;

  for (const std::size_t n : config.n_grid) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t replicates = config.replicates_for(n);
    CellResult cell;
    cell.n = n;
    cell.analytic = analytic;
    cell.estimates.resize(replicates);

    detail::parallel_for(replicates, config.workers, [&](std::size_t r) {
      try {
        const Sample s = draw_sample(config.spec, n, substream_seed(config.master_seed, n, r));
        cell.estimates[r] = estimate_mi(s, config.estimator);
      } catch (const std::exception& e) {
        throw std::runtime_error("N=" + std::to_string(n) + " replicate=" + std::to_string(r) +
                                 ": " + e.what());
      }
    });

    cell.mean = mean_of(cell.estimates);
    cell.q_lo = quantile(cell.estimates, config.quantiles.first);
    cell.q_hi = quantile(cell.estimates, config.quantiles.second);
    cell.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.cells.push_back(std::move(cell));
  }
  return result;
}

double bootstrap_mi(const Sample& sample, std::size_t B, const EstimatorConfig& estimator,
                    const Resampler& resampler, unsigned workers) {
  if (B == 0) throw std::invalid_argument("bootstrap_mi: B must be at least 1");
  if (sample.size() < 2) throw std::invalid_argument("bootstrap_mi: need at least two pairs");
  estimator.validate();

  const std::size_t n = sample.size();
  std::vector<double> estimates(B);
  detail::parallel_for(B, workers, [&](std::size_t b) {
    std::vector<std::size_t> indices(n);
    resampler(b, indices);
    Sample resample;
    resample.x.resize(n);
    resample.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      resample.x[i] = sample.x.at(indices[i]);
      resample.y[i] = sample.y.at(indices[i]);
    }
    try {
      estimates[b] = estimate_mi(resample, estimator);
    } catch (const std::exception& e) {
      throw std::runtime_error("bootstrap replicate " + std::to_string(b) + ": " + e.what());
    }
  });
  return mean_of(estimates);
}

double bootstrap_mi(const Sample& sample, std::size_t B, const EstimatorConfig& estimator,
                    std::uint64_t seed, unsigned workers) {
  const std::size_t n = sample.size();
  const Resampler with_replacement = [&](std::size_t b, std::span<std::size_t> indices) {
    Engine engine(substream_seed(seed, n, b));
    boost::random::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (auto& index : indices) index = pick(engine);
  };
  return bootstrap_mi(sample, B, estimator, with_replacement, workers);
}

BiasFit bias_extrapolate(std::span<const std::pair<std::size_t, double>> n_and_mean) {
  std::set<std::size_t> distinct;
  for (const auto& [n, mean] : n_and_mean) {
    if (n == 0) throw std::invalid_argument("bias_extrapolate: N must be positive");
    if (!std::isfinite(mean)) throw std::invalid_argument("bias_extrapolate: non-finite mean");
    distinct.insert(n);
  }
  if (distinct.size() < 3) {
    throw std::invalid_argument("bias_extrapolate: need at least 3 distinct N values, got " +
                                std::to_string(distinct.size()));
  }

  BiasFit fit;
  for (const auto& [n, mean] : n_and_mean) fit.points.emplace_back(1.0 / static_cast<double>(n), mean);

  const auto count = static_cast<double>(fit.points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : fit.points) {
    mx += x;
    my += y;
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : fit.points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;

  double ss = 0.0;
  for (const auto& [x, y] : fit.points) {
    const double r = y - (fit.intercept + fit.slope * x);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / count);
  return fit;
}

BiasFit bias_extrapolate(const ExperimentResult& result) {
  std::vector<std::pair<std::size_t, double>> points;
  for (const auto& cell : result.cells) points.emplace_back(cell.n, cell.mean);
  return bias_extrapolate(points);
}

std::vector<LengthPoint> length_curve(const Sample& sample, std::span<const std::size_t> lengths,
                                      std::size_t B, const EstimatorConfig& estimator,
                                      std::uint64_t seed, unsigned workers) {
  std::vector<LengthPoint> curve;
  for (const std::size_t n : lengths) {
    if (n < 2 || n > sample.size()) {
      throw std::invalid_argument("length_curve: length " + std::to_string(n) +
                                  " outside [2, " + std::to_string(sample.size()) + "]");
    }
    Sample prefix;
    prefix.x.assign(sample.x.begin(), sample.x.begin() + static_cast<std::ptrdiff_t>(n));
    prefix.y.assign(sample.y.begin(), sample.y.begin() + static_cast<std::ptrdiff_t>(n));
    prefix.provenance = sample.provenance;

    LengthPoint point;
    point.n = n;
    point.pearson = pearson_correlation(prefix);
    point.gaussian_mi = analytic_mi_gauss(point.pearson).value;
    point.estimate = bootstrap_mi(prefix, B, estimator, seed, workers);
    curve.push_back(point);
  }
  return curve;
}

}  // namespace mibench
