#include "mibench/estimators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/random/uniform_real_distribution.hpp>

#include "mibench/analytic.hpp"
#include "mibench/knn_index.hpp"
#include "mibench/rng.hpp"

namespace mibench {

std::string_view to_string(EstimatorKind kind) {
  return kind == EstimatorKind::ksg ? "ksg" : "plugin";
}

std::string_view to_string(DuplicatePolicy policy) {
  switch (policy) {
    case DuplicatePolicy::keep: return "keep";
    case DuplicatePolicy::jitter: return "jitter";
    case DuplicatePolicy::drop: return "drop";
  }
  return "?";
}

std::optional<EstimatorKind> parse_estimator_kind(std::string_view text) {
  if (text == "ksg" || text == "knn") return EstimatorKind::ksg;
  if (text == "plugin" || text == "histogram") return EstimatorKind::plugin;
  return std::nullopt;
}

std::optional<DuplicatePolicy> parse_duplicate_policy(std::string_view text) {
  if (text == "keep") return DuplicatePolicy::keep;
  if (text == "jitter") return DuplicatePolicy::jitter;
  if (text == "drop") return DuplicatePolicy::drop;
  return std::nullopt;
}

void EstimatorConfig::validate() const {
  if (kind == EstimatorKind::ksg && k == 0) {
    throw std::invalid_argument("k must be at least 1");
  }
  if (kind == EstimatorKind::plugin && bins == 1) {
    throw std::invalid_argument("bins must be at least 2 (or 0 for the default rule)");
  }
}

std::size_t EstimatorConfig::k_or_bins(std::size_t n) const {
  if (kind == EstimatorKind::ksg) return k;
  return bins == 0 ? default_bin_count(n) : bins;
}

namespace {

void require_finite(const Sample& sample, const char* who) {
  if (sample.x.size() != sample.y.size()) {
    throw std::invalid_argument(std::string(who) + ": x and y differ in length");
  }
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (!std::isfinite(sample.x[i]) || !std::isfinite(sample.y[i])) {
      throw std::invalid_argument(std::string(who) + ": non-finite coordinate at index " +
                                  std::to_string(i));
    }
  }
}

// Indices sorted by (x, y, index); equal neighbours are repeated pairs.
std::vector<std::size_t> lexicographic_order(const Sample& s) {
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (s.x[a] != s.x[b]) return s.x[a] < s.x[b];
    if (s.y[a] != s.y[b]) return s.y[a] < s.y[b];
    return a < b;
  });
  return order;
}

double axis_scale(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double range = *hi - *lo;
  if (range > 0.0) return range;
  return std::max(std::abs(*lo), 1.0);
}

std::uint64_t content_hash(const Sample& s) {
  std::uint64_t h = mix64(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    h = mix64(h ^ std::bit_cast<std::uint64_t>(s.x[i]));
    h = mix64(h ^ std::bit_cast<std::uint64_t>(s.y[i]));
  }
  return h;
}

}  // namespace

Sample resolve_duplicates(const Sample& sample, DuplicatePolicy policy) {
  if (policy == DuplicatePolicy::keep || sample.size() < 2) return sample;

  const auto order = lexicographic_order(sample);
  std::vector<char> repeat(sample.size(), 0);  // true for every non-first copy
  bool any = false;
  for (std::size_t r = 1; r < order.size(); ++r) {
    const auto a = order[r - 1];
    const auto b = order[r];
    if (sample.x[a] == sample.x[b] && sample.y[a] == sample.y[b]) {
      repeat[b] = 1;
      any = true;
    }
  }
  if (!any) return sample;

  Sample out;
  out.provenance = sample.provenance;
  if (policy == DuplicatePolicy::drop) {
    for (std::size_t i = 0; i < sample.size(); ++i) {
      if (repeat[i]) continue;
      out.x.push_back(sample.x[i]);
      out.y.push_back(sample.y[i]);
    }
    return out;
  }

  out.x = sample.x;
  out.y = sample.y;
  const double amp_x = 1e-10 * axis_scale(sample.x);
  const double amp_y = 1e-10 * axis_scale(sample.y);
  Engine engine(content_hash(sample));
  boost::random::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (!repeat[i]) continue;
    out.x[i] += amp_x * unit(engine);
    out.y[i] += amp_y * unit(engine);
  }
  return out;
}

double ksg_mi(const Sample& sample, std::size_t k, DuplicatePolicy duplicates) {
  require_finite(sample, "ksg_mi");
  if (k == 0) throw std::invalid_argument("ksg_mi: k must be at least 1");

  const Sample resolved = resolve_duplicates(sample, duplicates);
  const std::size_t n = resolved.size();
  if (n <= k) {
    throw std::invalid_argument("ksg_mi: need more than k = " + std::to_string(k) +
                                " points, got " + std::to_string(n));
  }

  const KnnIndex index(resolved.x, resolved.y);
  double marginal_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double radius = index.kth_neighbor_distance(i, k);
    const auto nx = index.count_x_within(i, radius);
    const auto ny = index.count_y_within(i, radius);
    marginal_sum += digamma(static_cast<double>(nx + 1)) + digamma(static_cast<double>(ny + 1));
  }
  return digamma(static_cast<double>(k)) + digamma(static_cast<double>(n)) -
         marginal_sum / static_cast<double>(n);
}

std::size_t default_bin_count(std::size_t n) {
  auto bins = static_cast<std::size_t>(std::ceil(std::cbrt(static_cast<double>(n))));
  // cbrt of a perfect cube can land one ulp above the integer.
  if (bins > 1 && (bins - 1) * (bins - 1) * (bins - 1) >= n) --bins;
  return std::clamp<std::size_t>(bins, 8, 256);
}

std::vector<std::uint64_t> JointHistogram::x_marginal() const {
  std::vector<std::uint64_t> m(bins, 0);
  for (std::size_t ix = 0; ix < bins; ++ix) {
    for (std::size_t iy = 0; iy < bins; ++iy) m[ix] += count(ix, iy);
  }
  return m;
}

std::vector<std::uint64_t> JointHistogram::y_marginal() const {
  std::vector<std::uint64_t> m(bins, 0);
  for (std::size_t ix = 0; ix < bins; ++ix) {
    for (std::size_t iy = 0; iy < bins; ++iy) m[iy] += count(ix, iy);
  }
  return m;
}

JointHistogram JointHistogram::from_counts(std::size_t bins, std::vector<std::uint64_t> counts) {
  if (bins < 2) throw std::invalid_argument("JointHistogram: bins must be at least 2");
  if (counts.size() != bins * bins) {
    throw std::invalid_argument("JointHistogram: expected bins * bins counts");
  }
  JointHistogram h;
  h.bins = bins;
  h.n = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  h.counts = std::move(counts);
  return h;
}

namespace {

std::vector<double> equal_width_edges(const std::vector<double>& v, std::size_t bins) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  std::vector<double> edges(bins + 1);
  const double width = (*hi - *lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b <= bins; ++b) edges[b] = *lo + width * static_cast<double>(b);
  edges[bins] = *hi;
  return edges;
}

std::size_t bin_of(double v, const std::vector<double>& edges) {
  const std::size_t bins = edges.size() - 1;
  const double lo = edges.front();
  const double range = edges.back() - lo;
  if (!(range > 0.0)) return 0;
  const auto b = static_cast<std::size_t>((v - lo) / range * static_cast<double>(bins));
  return std::min(b, bins - 1);
}

}  // namespace

JointHistogram build_joint_histogram(const Sample& sample, std::size_t bins) {
  require_finite(sample, "build_joint_histogram");
  if (bins < 2) throw std::invalid_argument("build_joint_histogram: bins must be at least 2");
  if (sample.size() < 2) throw std::invalid_argument("build_joint_histogram: need two points");

  JointHistogram h;
  h.bins = bins;
  h.n = sample.size();
  h.counts.assign(bins * bins, 0);
  h.x_edges = equal_width_edges(sample.x, bins);
  h.y_edges = equal_width_edges(sample.y, bins);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    ++h.counts[bin_of(sample.x[i], h.x_edges) * bins + bin_of(sample.y[i], h.y_edges)];
  }
  return h;
}

double miller_madow_correction(std::size_t nonempty_x, std::size_t nonempty_y,
                               std::size_t nonempty_xy, std::size_t n) {
  if (n == 0) throw std::invalid_argument("miller_madow_correction: n must be positive");
  const auto mx = static_cast<double>(nonempty_x);
  const auto my = static_cast<double>(nonempty_y);
  const auto mxy = static_cast<double>(nonempty_xy);
  return ((mx - 1.0) + (my - 1.0) - (mxy - 1.0)) / (2.0 * static_cast<double>(n));
}

double plugin_mi(const JointHistogram& h, bool miller_madow) {
  if (h.n == 0) throw std::invalid_argument("plugin_mi: empty histogram");
  const auto rows = h.x_marginal();
  const auto cols = h.y_marginal();
  const auto n = static_cast<double>(h.n);

  double mi = 0.0;
  std::size_t nonempty_xy = 0;
  for (std::size_t ix = 0; ix < h.bins; ++ix) {
    for (std::size_t iy = 0; iy < h.bins; ++iy) {
      const auto c = h.count(ix, iy);
      if (c == 0) continue;
      ++nonempty_xy;
      const auto cd = static_cast<double>(c);
      mi += cd / n *
            std::log(cd * n / (static_cast<double>(rows[ix]) * static_cast<double>(cols[iy])));
    }
  }
  // A KL divergence; only rounding can push it below zero.
  mi = std::max(mi, 0.0);

  if (miller_madow) {
    const auto nonempty = [](const std::vector<std::uint64_t>& m) {
      return static_cast<std::size_t>(std::count_if(m.begin(), m.end(), [](auto c) { return c > 0; }));
    };
    mi += miller_madow_correction(nonempty(rows), nonempty(cols), nonempty_xy, h.n);
  }
  return mi;
}

double plugin_mi(const Sample& sample, std::size_t bins, bool miller_madow) {
  return plugin_mi(build_joint_histogram(sample, bins), miller_madow);
}

double estimate_mi(const Sample& sample, const EstimatorConfig& config) {
  config.validate();
  if (config.kind == EstimatorKind::ksg) {
    return ksg_mi(sample, config.k, config.duplicates);
  }
  const Sample resolved = resolve_duplicates(sample, config.duplicates);
  return plugin_mi(resolved, config.k_or_bins(resolved.size()), config.miller_madow);
}

}  // namespace mibench
