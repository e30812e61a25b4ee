#include "mibench/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>

#include <gtest/gtest.h>

namespace mibench {
namespace {

DistributionSpec normal_spec(double rho) {
  DistributionSpec spec;
  spec.rho = rho;
  return spec;
}

double excess_kurtosis(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double m2 = 0.0, m4 = 0.0;
  for (double x : v) {
    const double d = (x - mean) * (x - mean);
    m2 += d;
    m4 += d * d;
  }
  m2 /= n;
  m4 /= n;
  return m4 / (m2 * m2) - 3.0;
}

TEST(DrawSample, IndependentNormalIsUncorrelated) {
  const Sample s = draw_sample(normal_spec(0.0), 100'000, 11);
  ASSERT_EQ(s.size(), 100'000u);
  EXPECT_NEAR(pearson_correlation(s), 0.0, 0.02);
}

TEST(DrawSample, CorrelatedNormalHitsRho) {
  const Sample s = draw_sample(normal_spec(0.5), 100'000, 12);
  EXPECT_NEAR(pearson_correlation(s), 0.5, 0.02);
}

TEST(DrawSample, LocationAndScale) {
  DistributionSpec spec = normal_spec(0.3);
  spec.mu = {2.0, -1.0};
  spec.sigma = {0.5, 3.0};
  const Sample s = draw_sample(spec, 50'000, 5);
  const double n = static_cast<double>(s.size());
  const double mx = std::accumulate(s.x.begin(), s.x.end(), 0.0) / n;
  const double my = std::accumulate(s.y.begin(), s.y.end(), 0.0) / n;
  EXPECT_NEAR(mx, 2.0, 5 * 0.5 / std::sqrt(n));
  EXPECT_NEAR(my, -1.0, 5 * 3.0 / std::sqrt(n));
  EXPECT_NEAR(pearson_correlation(s), 0.3, 0.02);
}

TEST(DrawSample, LognormalIsPositive) {
  DistributionSpec spec = normal_spec(0.5);
  spec.family = Family::lognormal;
  for (std::size_t n : {1u, 10u, 5000u}) {
    const Sample s = draw_sample(spec, n, 99);
    EXPECT_TRUE(std::all_of(s.x.begin(), s.x.end(), [](double v) { return v > 0.0; }));
    EXPECT_TRUE(std::all_of(s.y.begin(), s.y.end(), [](double v) { return v > 0.0; }));
  }
}

TEST(DrawSample, LognormalIsExpOfNormal) {
  DistributionSpec spec = normal_spec(0.5);
  const Sample base = draw_sample(spec, 100, 3);
  spec.family = Family::lognormal;
  const Sample logn = draw_sample(spec, 100, 3);
  for (std::size_t i = 0; i < base.size(); ++i) {
    EXPECT_EQ(logn.x[i], std::exp(base.x[i]));
    EXPECT_EQ(logn.y[i], std::exp(base.y[i]));
  }
}

TEST(DrawSample, StudentTHasHeavyTails) {
  DistributionSpec spec = normal_spec(0.5);
  spec.family = Family::student_t;
  spec.nu = 3.0;
  const Sample t = draw_sample(spec, 100'000, 21);
  EXPECT_GT(excess_kurtosis(t.x), 2.0);
  EXPECT_GT(excess_kurtosis(t.y), 2.0);
  const Sample g = draw_sample(normal_spec(0.5), 100'000, 21);
  EXPECT_LT(std::abs(excess_kurtosis(g.x)), 0.2);
}

TEST(DrawSample, BitIdenticalForSameSeed) {
  for (Family family : {Family::normal, Family::lognormal, Family::student_t}) {
    DistributionSpec spec = normal_spec(0.4);
    spec.family = family;
    const Sample a = draw_sample(spec, 1000, 77);
    const Sample b = draw_sample(spec, 1000, 77);
    ASSERT_EQ(a.size(), b.size());
    EXPECT_EQ(std::memcmp(a.x.data(), b.x.data(), a.size() * sizeof(double)), 0);
    EXPECT_EQ(std::memcmp(a.y.data(), b.y.data(), a.size() * sizeof(double)), 0);
    const Sample c = draw_sample(spec, 1000, 78);
    EXPECT_NE(a.x, c.x);
  }
}

TEST(DrawSample, DistinctSeedsPoolToSaneMoments) {
  std::vector<double> pooled;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Sample s = draw_sample(normal_spec(0.5), 1000, seed);
    pooled.insert(pooled.end(), s.x.begin(), s.x.end());
  }
  const double n = static_cast<double>(pooled.size());
  const double mean = std::accumulate(pooled.begin(), pooled.end(), 0.0) / n;
  double var = 0.0;
  for (double v : pooled) var += (v - mean) * (v - mean);
  var /= n - 1;
  EXPECT_LT(std::abs(mean), 5.0 / std::sqrt(n));
  EXPECT_NEAR(var, 1.0, 0.05);
}

TEST(DrawSample, RejectsInvalidSpec) {
  EXPECT_THROW(draw_sample(normal_spec(1.0), 10, 0), std::invalid_argument);
  DistributionSpec spec = normal_spec(0.0);
  spec.sigma[1] = 0.0;
  EXPECT_THROW(draw_sample(spec, 10, 0), std::invalid_argument);
  spec = normal_spec(0.0);
  spec.family = Family::student_t;
  spec.nu = 0.0;
  EXPECT_THROW(draw_sample(spec, 10, 0), std::invalid_argument);
  EXPECT_THROW(draw_sample(normal_spec(0.0), 0, 0), std::invalid_argument);
}

TEST(ApplyTransform, Cube) {
  Sample s;
  s.x = {2.0};
  s.y = {-3.0};
  const Sample t = apply_transform(s, Transform::cube);
  EXPECT_EQ(t.x[0], 8.0);
  EXPECT_EQ(t.y[0], -27.0);
}

TEST(ApplyTransform, CubeRootInvertsCube) {
  DistributionSpec spec = normal_spec(0.5);
  spec.family = Family::student_t;
  const Sample s = draw_sample(spec, 2000, 4);
  const Sample back = apply_transform(apply_transform(s, Transform::cube), Transform::cube_root);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_NEAR(back.x[i], s.x[i], 1e-12 * std::abs(s.x[i]));
    EXPECT_NEAR(back.y[i], s.y[i], 1e-12 * std::abs(s.y[i]));
  }
}

TEST(ApplyTransform, CubeRootIsSignPreserving) {
  EXPECT_DOUBLE_EQ(apply_transform(-8.0, Transform::cube_root), -2.0);
  EXPECT_DOUBLE_EQ(apply_transform(27.0, Transform::cube_root), 3.0);
}

TEST(ApplyTransform, IncreasingMapsPreserveRanks) {
  const Sample s = draw_sample(normal_spec(0.2), 500, 8);
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    return idx;
  };
  for (Transform t : {Transform::cube, Transform::cube_root, Transform::exp_map}) {
    const Sample m = apply_transform(s, t);
    EXPECT_EQ(ranks(m.x), ranks(s.x));
    EXPECT_EQ(ranks(m.y), ranks(s.y));
  }
}

TEST(DrawSample, AppliesSpecTransformToRawCoordinates) {
  DistributionSpec spec = normal_spec(0.5);
  const Sample raw = draw_sample(spec, 50, 6);
  spec.transform = Transform::cube;
  const Sample cubed = draw_sample(spec, 50, 6);
  for (std::size_t i = 0; i < raw.size(); ++i) EXPECT_EQ(cubed.x[i], raw.x[i] * raw.x[i] * raw.x[i]);
}

TEST(AnalyticMI, PassesThroughTransformsAndExp) {
  DistributionSpec spec = normal_spec(0.5);
  spec.family = Family::lognormal;
  EXPECT_NEAR(analytic_mi(spec).value, 0.14384103622589045, 1e-15);
  spec.family = Family::normal;
  spec.transform = Transform::cube;
  EXPECT_NEAR(analytic_mi(spec).value, 0.14384103622589045, 1e-15);
  spec.family = Family::student_t;
  spec.nu = 3.0;
  EXPECT_NEAR(analytic_mi(spec).value, 0.18625244687646021, 1e-10);

  for (Family family : {Family::normal, Family::lognormal, Family::student_t}) {
    DistributionSpec base = normal_spec(-0.35);
    base.family = family;
    for (Transform t : {Transform::cube, Transform::cube_root, Transform::exp_map}) {
      DistributionSpec mapped = base;
      mapped.transform = t;
      EXPECT_EQ(analytic_mi(mapped).value, analytic_mi(base).value);
    }
  }
}

TEST(Pearson, RejectsDegenerateInput) {
  Sample s;
  s.x = {1.0};
  s.y = {2.0};
  EXPECT_THROW(pearson_correlation(s), std::invalid_argument);
  s.x = {1.0, 1.0};
  s.y = {2.0, 3.0};
  EXPECT_THROW(pearson_correlation(s), std::invalid_argument);
}

}  // namespace
}  // namespace mibench
