#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mibench {

/// Static 2-d tree over a bivariate sample answering the two queries the KSG
/// estimator needs:
///
///  * the Chebyshev (max-norm) distance from point i to its k-th nearest
///    neighbour in the joint space, with point i itself excluded;
///  * per-axis strict range counts #{j != i : |v_j - v_i| < r}.
///
/// Both answers are bit-identical to a brute-force scan: distances are the
/// same floating-point expression, pruning only discards boxes whose lower
/// bound is not below the current k-th distance, and the range counts search
/// sorted marginals with predicates that are monotone under rounding.
///
/// Build once, then query concurrently from any number of threads.
class KnnIndex {
 public:
  KnnIndex(std::span<const double> x, std::span<const double> y);

  std::size_t size() const noexcept { return xs_sorted_.size(); }

  /// Requires 1 <= k < size().
  double kth_neighbor_distance(std::size_t i, std::size_t k) const;

  std::size_t count_x_within(std::size_t i, double radius) const;
  std::size_t count_y_within(std::size_t i, double radius) const;

 private:
  struct Point {
    double x;
    double y;
  };
  struct Node {
    double lo[2];
    double hi[2];
    std::uint32_t begin;
    std::uint32_t end;
    std::int32_t left = -1;
    std::int32_t right = -1;
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end,
                     std::vector<std::uint32_t>& order, std::span<const double> x,
                     std::span<const double> y);

  static std::size_t count_within(const std::vector<double>& sorted, double center,
                                  double radius);

  std::vector<Point> points_;           // tree order
  std::vector<std::uint32_t> ids_;      // original index of points_[p]
  std::vector<Node> nodes_;
  std::vector<double> query_x_;         // original order
  std::vector<double> query_y_;
  std::vector<double> xs_sorted_;
  std::vector<double> ys_sorted_;
};

}  // namespace mibench
