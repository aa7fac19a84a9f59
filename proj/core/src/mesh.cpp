#include "goed/mesh.hpp"

#include <stdexcept>

namespace goed {

Mesh build_mesh(int n) {
  if (n < 2) throw std::invalid_argument("build_mesh: need at least 2 nodes per side");

  Mesh mesh;
  mesh.n = n;
  const double h = 1.0 / (n - 1);

  mesh.nodes.resize(static_cast<Index>(n) * n, 2);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int k = mesh.node_index(i, j);
      mesh.nodes(k, 0) = i * h;
      mesh.nodes(k, 1) = j * h;
    }

  mesh.triangles.resize(2 * static_cast<Index>(n - 1) * (n - 1), 3);
  Index t = 0;
  for (int j = 0; j + 1 < n; ++j)
    for (int i = 0; i + 1 < n; ++i) {
      const int v00 = mesh.node_index(i, j);
      const int v10 = mesh.node_index(i + 1, j);
      const int v01 = mesh.node_index(i, j + 1);
      const int v11 = mesh.node_index(i + 1, j + 1);
      mesh.triangles.row(t++) << v00, v10, v11;
      mesh.triangles.row(t++) << v00, v11, v01;
    }
  return mesh;
}

std::vector<int> Mesh::boundary_nodes(EdgeSet edges) const {
  std::vector<int> out;
  for (Index k = 0; k < num_nodes(); ++k)
    if (boundary_tags(static_cast<int>(k)) & edges) out.push_back(static_cast<int>(k));
  return out;
}

PointLocation locate_point(const Mesh& mesh, const Point& p) {
  if (p.x() < 0.0 || p.x() > 1.0 || p.y() < 0.0 || p.y() > 1.0)
    throw std::invalid_argument("locate_point: coordinate outside the unit square");

  const int n = mesh.n;
  const double h = mesh.h();
  const int i = std::min(static_cast<int>(p.x() / h), n - 2);
  const int j = std::min(static_cast<int>(p.y() / h), n - 2);
  const double xi = p.x() / h - i;
  const double eta = p.y() / h - j;

  const int v00 = mesh.node_index(i, j);
  const int v10 = mesh.node_index(i + 1, j);
  const int v01 = mesh.node_index(i, j + 1);
  const int v11 = mesh.node_index(i + 1, j + 1);

  PointLocation loc;
  if (xi >= eta) {  // lower-right triangle (v00, v10, v11)
    loc.nodes = {v00, v10, v11};
    loc.weights = {1.0 - xi, xi - eta, eta};
  } else {  // upper-left triangle (v00, v11, v01)
    loc.nodes = {v00, v11, v01};
    loc.weights = {1.0 - eta, xi, eta - xi};
  }
  return loc;
}

}  // namespace goed
