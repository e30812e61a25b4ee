#include "mibench/knn_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mibench {

namespace {

constexpr std::uint32_t kLeafSize = 8;
constexpr std::size_t kMaxStackDepth = 128;

// Fixed-capacity sorted list of the k smallest distances seen so far.
class KSmallest {
 public:
  explicit KSmallest(std::size_t k) : k_(k) { values_.reserve(k); }

  bool full() const noexcept { return values_.size() == k_; }
  double worst() const noexcept {
    return full() ? values_.back() : std::numeric_limits<double>::infinity();
  }

  void offer(double d) {
    if (full()) {
      if (!(d < values_.back())) return;
      values_.pop_back();
    }
    values_.insert(std::upper_bound(values_.begin(), values_.end(), d), d);
  }

 private:
  std::size_t k_;
  std::vector<double> values_;
};

}  // namespace

KnnIndex::KnnIndex(std::span<const double> x, std::span<const double> y)
    : query_x_(x.begin(), x.end()), query_y_(y.begin(), y.end()) {
  if (x.size() != y.size()) throw std::invalid_argument("KnnIndex: x and y differ in length");
  if (x.size() < 2) throw std::invalid_argument("KnnIndex: need at least two points");
  if (x.size() > std::numeric_limits<std::int32_t>::max()) {
    throw std::invalid_argument("KnnIndex: sample too large");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw std::invalid_argument("KnnIndex: non-finite coordinate at index " +
                                  std::to_string(i));
    }
  }

  const auto n = static_cast<std::uint32_t>(x.size());
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  nodes_.reserve(2 * (n / kLeafSize + 1));
  build(0, n, order, x, y);

  points_.resize(n);
  ids_ = order;
  for (std::uint32_t p = 0; p < n; ++p) points_[p] = {x[order[p]], y[order[p]]};

  xs_sorted_ = query_x_;
  ys_sorted_ = query_y_;
  std::sort(xs_sorted_.begin(), xs_sorted_.end());
  std::sort(ys_sorted_.begin(), ys_sorted_.end());
}

std::int32_t KnnIndex::build(std::uint32_t begin, std::uint32_t end,
                             std::vector<std::uint32_t>& order, std::span<const double> x,
                             std::span<const double> y) {
  Node node{};
  node.begin = begin;
  node.end = end;
  node.lo[0] = node.lo[1] = std::numeric_limits<double>::infinity();
  node.hi[0] = node.hi[1] = -std::numeric_limits<double>::infinity();
  for (std::uint32_t p = begin; p < end; ++p) {
    const double px = x[order[p]];
    const double py = y[order[p]];
    node.lo[0] = std::min(node.lo[0], px);
    node.hi[0] = std::max(node.hi[0], px);
    node.lo[1] = std::min(node.lo[1], py);
    node.hi[1] = std::max(node.hi[1], py);
  }
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(node);

  const double spread_x = node.hi[0] - node.lo[0];
  const double spread_y = node.hi[1] - node.lo[1];
  if (end - begin <= kLeafSize || (spread_x == 0.0 && spread_y == 0.0)) return id;

  const int axis = spread_x >= spread_y ? 0 : 1;
  const std::span<const double> coord = axis == 0 ? x : y;
  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                   [&](std::uint32_t a, std::uint32_t b) {
                     return coord[a] < coord[b] || (coord[a] == coord[b] && a < b);
                   });

  const std::int32_t left = build(begin, mid, order, x, y);
  const std::int32_t right = build(mid, end, order, x, y);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

double KnnIndex::kth_neighbor_distance(std::size_t i, std::size_t k) const {
  if (i >= size()) throw std::out_of_range("KnnIndex: query index out of range");
  if (k == 0 || k >= size()) throw std::invalid_argument("KnnIndex: k must lie in [1, n-1]");

  const double qx = query_x_[i];
  const double qy = query_y_[i];
  const auto self = static_cast<std::uint32_t>(i);
  KSmallest best(k);

  auto box_distance = [&](const Node& node) {
    const double dx = std::max({node.lo[0] - qx, qx - node.hi[0], 0.0});
    const double dy = std::max({node.lo[1] - qy, qy - node.hi[1], 0.0});
    return std::max(dx, dy);
  };

  std::int32_t stack[kMaxStackDepth];
  std::size_t top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (best.full() && !(box_distance(node) < best.worst())) continue;

    if (node.left < 0) {
      for (std::uint32_t p = node.begin; p < node.end; ++p) {
        if (ids_[p] == self) continue;
        const double d = std::max(std::abs(points_[p].x - qx), std::abs(points_[p].y - qy));
        best.offer(d);
      }
      continue;
    }

    // Push the farther child first so the nearer one is expanded next.
    const Node& left = nodes_[node.left];
    const Node& right = nodes_[node.right];
    if (box_distance(left) <= box_distance(right)) {
      stack[top++] = node.right;
      stack[top++] = node.left;
    } else {
      stack[top++] = node.left;
      stack[top++] = node.right;
    }
  }
  return best.worst();
}

std::size_t KnnIndex::count_within(const std::vector<double>& sorted, double center,
                                   double radius) {
  // v - center is nondecreasing in v above the center and center - v is
  // nonincreasing below it, so both partitions match |v - center| < radius.
  const auto pivot = std::lower_bound(sorted.begin(), sorted.end(), center);
  const auto upper = std::partition_point(pivot, sorted.end(),
                                          [&](double v) { return v - center < radius; });
  const auto lower = std::partition_point(sorted.begin(), pivot,
                                          [&](double v) { return !(center - v < radius); });
  auto count = static_cast<std::size_t>(upper - lower);
  // The query itself sits at distance 0, which is inside any positive radius.
  if (radius > 0.0) --count;
  return count;
}

std::size_t KnnIndex::count_x_within(std::size_t i, double radius) const {
  return count_within(xs_sorted_, query_x_.at(i), radius);
}

std::size_t KnnIndex::count_y_within(std::size_t i, double radius) const {
  return count_within(ys_sorted_, query_y_.at(i), radius);
}

}  // namespace mibench
