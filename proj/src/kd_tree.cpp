#include "resit/kd_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "resit/errors.hpp"

namespace resit {

KdTree::KdTree(std::span<const double> points) : points_(points.begin(), points.end()) {
  std::vector<std::size_t> idx(points_.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  nodes_.reserve(points_.size());
  root_ = build(idx, 0, idx.size());
}

std::size_t KdTree::build(std::vector<std::size_t>& idx, std::size_t lo, std::size_t hi) {
  if (lo >= hi) return kNone;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::nth_element(idx.begin() + static_cast<std::ptrdiff_t>(lo),
                   idx.begin() + static_cast<std::ptrdiff_t>(mid),
                   idx.begin() + static_cast<std::ptrdiff_t>(hi),
                   [this](std::size_t a, std::size_t b) { return points_[a] < points_[b]; });
  const std::size_t id = nodes_.size();
  nodes_.push_back(Node{idx[mid], kNone, kNone});
  const std::size_t left = build(idx, lo, mid);
  const std::size_t right = build(idx, mid + 1, hi);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

// `best` holds the k smallest distances seen so far, ascending.
void KdTree::search(std::size_t node, double query, std::size_t self, unsigned k,
                    std::vector<double>& best) const {
  if (node == kNone) return;
  const Node& nd = nodes_[node];
  const double split = points_[nd.point];
  if (nd.point != self) {
    const double d = std::abs(split - query);
    if (d < best[k - 1]) {
      auto pos = std::upper_bound(best.begin(), best.end(), d);
      best.insert(pos, d);
      best.pop_back();
    }
  }
  const double diff = query - split;
  const std::size_t near = diff < 0 ? nd.left : nd.right;
  const std::size_t far = diff < 0 ? nd.right : nd.left;
  search(near, query, self, k, best);
  // Points across the split are at least |diff| away.
  if (std::abs(diff) <= best[k - 1]) search(far, query, self, k, best);
}

double KdTree::kth_neighbor_distance(std::size_t index, unsigned k) const {
  if (k == 0 || k >= points_.size()) {
    throw ParameterError("kd-tree: k must be in [1, n-1]");
  }
  std::vector<double> best(k, std::numeric_limits<double>::infinity());
  search(root_, points_[index], index, k, best);
  return best[k - 1];
}

}  // namespace resit
