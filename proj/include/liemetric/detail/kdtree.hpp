#pragma once

// Minimal kd-tree over fixed-dimension points for nearest-neighbor and
// radius queries (used by the coverage checker on flattened adjoint
// matrices).

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

namespace liemetric::detail {

class KdTree {
 public:
  // points: one column per point.
  explicit KdTree(Eigen::MatrixXd points, int leaf_size = 24)
      : pts_(std::move(points)), leaf_size_(std::max(2, leaf_size)) {
    idx_.resize(pts_.cols());
    std::iota(idx_.begin(), idx_.end(), 0);
    if (!idx_.empty()) root_ = build(0, static_cast<int>(idx_.size()));
  }

  int size() const { return static_cast<int>(pts_.cols()); }

  /// Index and squared distance of the nearest point to q.
  std::pair<int, double> nearest(const Eigen::VectorXd& q) const {
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    nearest_rec(root_, q, best, best_d2);
    return {best, best_d2};
  }

  /// All point indices within Euclidean distance r of q.
  std::vector<int> within(const Eigen::VectorXd& q, double r) const {
    std::vector<int> out;
    within_rec(root_, q, r * r, out);
    return out;
  }

 private:
  struct Node {
    int lo, hi;          // range in idx_
    int axis = -1;       // -1 for leaves
    double split = 0.0;
    int left = -1, right = -1;
  };

  int build(int lo, int hi) {
    Node node;
    node.lo = lo;
    node.hi = hi;
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    if (hi - lo <= leaf_size_) return id;

    // Split on the widest axis at the median.
    int axis = 0;
    double widest = -1.0;
    for (int a = 0; a < pts_.rows(); ++a) {
      double mn = std::numeric_limits<double>::infinity(), mx = -mn;
      for (int i = lo; i < hi; ++i) {
        const double v = pts_(a, idx_[i]);
        mn = std::min(mn, v);
        mx = std::max(mx, v);
      }
      if (mx - mn > widest) {
        widest = mx - mn;
        axis = a;
      }
    }
    const int mid = (lo + hi) / 2;
    std::nth_element(idx_.begin() + lo, idx_.begin() + mid, idx_.begin() + hi,
                     [&](int a, int b) { return pts_(axis, a) < pts_(axis, b); });
    nodes_[id].axis = axis;
    nodes_[id].split = pts_(axis, idx_[mid]);
    nodes_[id].left = build(lo, mid);
    nodes_[id].right = build(mid, hi);
    return id;
  }

  void nearest_rec(int id, const Eigen::VectorXd& q, int& best, double& best_d2) const {
    const Node& node = nodes_[id];
    if (node.axis < 0) {
      for (int i = node.lo; i < node.hi; ++i) {
        const double d2 = (pts_.col(idx_[i]) - q).squaredNorm();
        if (d2 < best_d2) {
          best_d2 = d2;
          best = idx_[i];
        }
      }
      return;
    }
    const double delta = q(node.axis) - node.split;
    const int near = delta < 0.0 ? node.left : node.right;
    const int far = delta < 0.0 ? node.right : node.left;
    nearest_rec(near, q, best, best_d2);
    if (delta * delta < best_d2) nearest_rec(far, q, best, best_d2);
  }

  void within_rec(int id, const Eigen::VectorXd& q, double r2, std::vector<int>& out) const {
    const Node& node = nodes_[id];
    if (node.axis < 0) {
      for (int i = node.lo; i < node.hi; ++i)
        if ((pts_.col(idx_[i]) - q).squaredNorm() <= r2) out.push_back(idx_[i]);
      return;
    }
    const double delta = q(node.axis) - node.split;
    const int near = delta < 0.0 ? node.left : node.right;
    const int far = delta < 0.0 ? node.right : node.left;
    within_rec(near, q, r2, out);
    if (delta * delta <= r2) within_rec(far, q, r2, out);
  }

  Eigen::MatrixXd pts_;
  int leaf_size_;
  std::vector<int> idx_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace liemetric::detail
