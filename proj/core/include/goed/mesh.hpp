#pragma once

#include <array>
#include <vector>

#include "goed/types.hpp"

namespace goed {

enum Edge : unsigned {
  kLeft = 1u,
  kRight = 2u,
  kBottom = 4u,
  kTop = 8u,
};
using EdgeSet = unsigned;
constexpr EdgeSet kAllEdges = kLeft | kRight | kBottom | kTop;

/// Uniform triangulation of the unit square: n nodes per side, quads split
/// along the bottom-left/top-right diagonal.  Nodes are ordered row-major
/// with x fastest: node(i,j) = j*n + i at (i*h, j*h).
struct Mesh {
  int n = 0;
  Eigen::Matrix<double, Eigen::Dynamic, 2> nodes;
  Eigen::Matrix<int, Eigen::Dynamic, 3> triangles;

  Index num_nodes() const { return static_cast<Index>(n) * n; }
  Index num_elements() const { return triangles.rows(); }
  double h() const { return 1.0 / (n - 1); }
  int node_index(int i, int j) const { return j * n + i; }

  EdgeSet boundary_tags(int node) const {
    const int i = node % n;
    const int j = node / n;
    EdgeSet tags = 0;
    if (i == 0) tags |= kLeft;
    if (i == n - 1) tags |= kRight;
    if (j == 0) tags |= kBottom;
    if (j == n - 1) tags |= kTop;
    return tags;
  }

  std::vector<int> boundary_nodes(EdgeSet edges) const;

  /// Nodal interpolant of a function of (x, y).
  template <typename F>
  Vector interpolate(F&& f) const {
    Vector v(num_nodes());
    for (Index k = 0; k < num_nodes(); ++k) v[k] = f(nodes(k, 0), nodes(k, 1));
    return v;
  }
};

Mesh build_mesh(int n);

/// Barycentric location of a point in the structured mesh.
struct PointLocation {
  std::array<int, 3> nodes;
  std::array<double, 3> weights;
};
PointLocation locate_point(const Mesh& mesh, const Point& p);

}  // namespace goed
