#include "mibench/sampling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/random/chi_squared_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

#include "mibench/rng.hpp"

namespace mibench {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::normal: return "normal";
    case Family::lognormal: return "lognormal";
    case Family::student_t: return "student";
  }
  return "?";
}

std::string_view to_string(Transform transform) {
  switch (transform) {
    case Transform::none: return "none";
    case Transform::cube: return "cube";
    case Transform::cube_root: return "cuberoot";
    case Transform::exp_map: return "exp";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view text) {
  if (text == "normal" || text == "gauss" || text == "gaussian") return Family::normal;
  if (text == "lognormal") return Family::lognormal;
  if (text == "student" || text == "student_t" || text == "student-t" || text == "t") {
    return Family::student_t;
  }
  return std::nullopt;
}

std::optional<Transform> parse_transform(std::string_view text) {
  if (text == "none" || text.empty()) return Transform::none;
  if (text == "cube") return Transform::cube;
  if (text == "cuberoot" || text == "cube_root") return Transform::cube_root;
  if (text == "exp" || text == "exp_map") return Transform::exp_map;
  return std::nullopt;
}

void DistributionSpec::validate() const {
  if (!(std::abs(rho) < 1.0)) {
    throw std::invalid_argument("rho must satisfy |rho| < 1 (got " + std::to_string(rho) + ")");
  }
  for (int i = 0; i < 2; ++i) {
    if (!(sigma[i] > 0.0) || !std::isfinite(sigma[i])) {
      throw std::invalid_argument("sigma" + std::to_string(i + 1) + " must be positive");
    }
    if (!std::isfinite(mu[i])) {
      throw std::invalid_argument("mu" + std::to_string(i + 1) + " must be finite");
    }
  }
  if (family == Family::student_t && (!(nu > 0.0) || !std::isfinite(nu))) {
    throw std::invalid_argument("nu must be positive for the Student-t family");
  }
}

Sample draw_sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
  spec.validate();
  if (n == 0) throw std::invalid_argument("draw_sample: n must be at least 1");

  Engine engine(seed);
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  boost::random::chi_squared_distribution<double> chi2(spec.family == Family::student_t ? spec.nu
                                                                                        : 1.0);
  const double rho = spec.rho;
  const double rho_c = std::sqrt(1.0 - rho * rho);

  Sample out;
  out.x.resize(n);
  out.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z1 = normal(engine);
    const double z2 = normal(engine);
    double u = z1;
    double v = rho * z1 + rho_c * z2;
    if (spec.family == Family::student_t) {
      const double scale = 1.0 / std::sqrt(chi2(engine) / spec.nu);
      u *= scale;
      v *= scale;
    }
    u = spec.mu[0] + spec.sigma[0] * u;
    v = spec.mu[1] + spec.sigma[1] * v;
    if (spec.family == Family::lognormal) {
      u = std::exp(u);
      v = std::exp(v);
    }
    out.x[i] = u;
    out.y[i] = v;
  }
  out.provenance = std::string(to_string(spec.family)) + " seed=" + std::to_string(seed);
  return apply_transform(std::move(out), spec.transform);
}

double apply_transform(double value, Transform transform) {
  switch (transform) {
    case Transform::none: return value;
    case Transform::cube: return value * value * value;
    case Transform::cube_root: return std::cbrt(value);
    case Transform::exp_map: return std::exp(value);
  }
  return value;
}

Sample apply_transform(Sample sample, Transform transform) {
  if (transform == Transform::none) return sample;
  for (auto& v : sample.x) v = apply_transform(v, transform);
  for (auto& v : sample.y) v = apply_transform(v, transform);
  sample.provenance += " transform=" + std::string(to_string(transform));
  return sample;
}

AnalyticMI analytic_mi(const DistributionSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case Family::normal: return analytic_mi_gauss(spec.rho);
    case Family::lognormal: {
      auto mi = analytic_mi_gauss(spec.rho);
      mi.family = Family::lognormal;
      return mi;
    }
    case Family::student_t: return analytic_mi_student(spec.nu, spec.rho);
  }
  throw std::logic_error("analytic_mi: unknown family");
}

double pearson_correlation(const Sample& sample) {
  const std::size_t n = sample.size();
  if (n < 2 || sample.y.size() != n) {
    throw std::invalid_argument("pearson_correlation: need at least two pairs");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += sample.x[i];
    my += sample.y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = sample.x[i] - mx;
    const double dy = sample.y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::invalid_argument("pearson_correlation: constant coordinate");
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace mibench
