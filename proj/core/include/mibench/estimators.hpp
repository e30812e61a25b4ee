#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mibench/sampling.hpp"

namespace mibench {

enum class EstimatorKind { ksg, plugin };

/// What an estimator does with exactly repeated (x, y) pairs.
///  keep   - estimate as given (default for simulated continuous data)
///  jitter - nudge repeats by a deterministic offset of 1e-10 x axis scale
///  drop   - keep the first occurrence of each distinct pair only
enum class DuplicatePolicy { keep, jitter, drop };

std::string_view to_string(EstimatorKind kind);
std::string_view to_string(DuplicatePolicy policy);
std::optional<EstimatorKind> parse_estimator_kind(std::string_view text);
std::optional<DuplicatePolicy> parse_duplicate_policy(std::string_view text);

struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::ksg;
  std::size_t k = 4;
  std::size_t bins = 0;  // 0 selects default_bin_count(n)
  bool miller_madow = false;
  DuplicatePolicy duplicates = DuplicatePolicy::keep;

  /// Checks the parameters that do not depend on the sample.
  void validate() const;
  /// k (KSG) or the bin count used at sample size n (plugin).
  std::size_t k_or_bins(std::size_t n) const;

  friend bool operator==(const EstimatorConfig&, const EstimatorConfig&) = default;
};

/// Equal-width joint histogram over the observed per-axis range.
/// Counts are row-major in x: count(ix, iy) == counts[ix * bins + iy].
struct JointHistogram {
  std::size_t bins = 0;
  std::size_t n = 0;
  std::vector<std::uint64_t> counts;
  std::vector<double> x_edges;  // bins + 1 entries
  std::vector<double> y_edges;

  std::uint64_t count(std::size_t ix, std::size_t iy) const { return counts[ix * bins + iy]; }
  std::vector<std::uint64_t> x_marginal() const;
  std::vector<std::uint64_t> y_marginal() const;

  /// Histogram from explicit counts; edges are left empty.
  static JointHistogram from_counts(std::size_t bins, std::vector<std::uint64_t> counts);
};

/// ceil(n^(1/3)) clamped to [8, 256].
std::size_t default_bin_count(std::size_t n);

JointHistogram build_joint_histogram(const Sample& sample, std::size_t bins);

/// (m_x - 1 + m_y - 1 - (m_xy - 1)) / (2n), the Miller-Madow adjustment of
/// H(X) + H(Y) - H(X,Y) given the nonempty bin counts.
double miller_madow_correction(std::size_t nonempty_x, std::size_t nonempty_y,
                               std::size_t nonempty_xy, std::size_t n);

/// Plug-in MI of the empirical joint distribution against the product of its
/// own marginals, optionally Miller-Madow corrected.
double plugin_mi(const JointHistogram& histogram, bool miller_madow);
double plugin_mi(const Sample& sample, std::size_t bins, bool miller_madow);

/// Kraskov-Stoegbauer-Grassberger estimator (first variant):
///   psi(k) + psi(n) - < psi(n_x + 1) + psi(n_y + 1) >
/// where n_x, n_y count points strictly inside the max-norm distance to the
/// k-th joint neighbour. Can be negative for small n; never clamped.
///
/// Throws std::invalid_argument if n <= k, k == 0, or a coordinate is not
/// finite.
double ksg_mi(const Sample& sample, std::size_t k,
              DuplicatePolicy duplicates = DuplicatePolicy::keep);

/// Applies `policy` to `sample`. Returns the input unchanged when it has no
/// repeated pairs.
Sample resolve_duplicates(const Sample& sample, DuplicatePolicy policy);

/// Dispatches on `config.kind`.
double estimate_mi(const Sample& sample, const EstimatorConfig& config);

}  // namespace mibench
