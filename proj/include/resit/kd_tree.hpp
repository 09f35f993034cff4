#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace resit {

/// Balanced kd-tree over scalar points (the d = 1 case: every level splits on
/// the single coordinate at the median). Supports k-th nearest neighbour
/// queries that exclude the query point's own index.
class KdTree {
 public:
  explicit KdTree(std::span<const double> points);

  /// Distance from points[index] to its k-th nearest neighbour among the
  /// other points, computed as |points[s] - points[index]|.
  double kth_neighbor_distance(std::size_t index, unsigned k) const;

  std::size_t size() const { return points_.size(); }

 private:
  struct Node {
    std::size_t point = 0;   // index into points_
    std::size_t left = kNone;
    std::size_t right = kNone;
  };
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t build(std::vector<std::size_t>& idx, std::size_t lo, std::size_t hi);
  void search(std::size_t node, double query, std::size_t self, unsigned k,
              std::vector<double>& best) const;

  std::vector<double> points_;
  std::vector<Node> nodes_;
  std::size_t root_ = kNone;
};

}  // namespace resit
