#pragma once

#include <vector>

#include "gfweno/core.hpp"

namespace gfweno {

/// Uniform point mesh of [x_start, x_end] with nodes x_j = x_start + j*dx,
/// j = 0..n (n+1 nodes). Node coordinates extend naturally to ghost indices.
struct Grid {
  double x_start = 0.0;
  double x_end = 1.0;
  int n = 1;  // interval count; node count is n+1
  double dx = 1.0;

  Grid() = default;
  Grid(double a, double b, int intervals)
      : x_start(a), x_end(b), n(intervals), dx((b - a) / intervals) {
    if (intervals < 1 || !(b > a)) throw ConfigError("grid: need x_end > x_start and n >= 1");
  }

  double node(int j) const { return x_start + j * dx; }
  double interface(int i) const { return x_start + (i + 0.5) * dx; }
};

/// Per-node table of M-component values over nodes -ghost .. n+ghost.
class NodalField {
 public:
  NodalField() = default;
  NodalField(int intervals, int components, int ghost)
      : n_(intervals), comps_(components), ghost_(ghost),
        v_(static_cast<size_t>(intervals + 1 + 2 * ghost), Vec(components)) {}

  int intervals() const { return n_; }
  int components() const { return comps_; }
  int ghost() const { return ghost_; }
  int first_node() const { return -ghost_; }
  int last_node() const { return n_ + ghost_; }

  Vec& at(int j) {
    check_range(j);
    return v_[static_cast<size_t>(j + ghost_)];
  }
  const Vec& at(int j) const {
    check_range(j);
    return v_[static_cast<size_t>(j + ghost_)];
  }

  /// Max-norm over interior nodes 0..n, all components.
  double interior_inf_norm() const {
    double m = 0.0;
    for (int j = 0; j <= n_; ++j) m = std::max(m, at(j).inf_norm());
    return m;
  }

 private:
  void check_range(int j) const {
    if (j < first_node() || j > last_node())
      throw std::out_of_range("nodal field: node " + std::to_string(j) +
                              " outside [" + std::to_string(first_node()) +
                              ", " + std::to_string(last_node()) +
                              "] (stencil past the ghost band?)");
  }

  int n_ = 0;
  int comps_ = 0;
  int ghost_ = 0;
  std::vector<Vec> v_;
};

/// Nodal solution values; ghost band included.
using State = NodalField;

}  // namespace gfweno
