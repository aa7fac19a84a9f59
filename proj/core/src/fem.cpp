#include "goed/fem.hpp"

#include <stdexcept>

namespace goed {

TriangleGeometry triangle_geometry(const Point& a, const Point& b, const Point& c) {
  const double det = (b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y());
  TriangleGeometry g;
  g.area = 0.5 * std::abs(det);
  if (g.area <= 0.0) throw std::invalid_argument("degenerate triangle");
  // grad phi_i = (b_i, c_i) / (2A) with b_i = y_j - y_k, c_i = x_k - x_j
  const double inv = 1.0 / det;
  g.grads << (b.y() - c.y()) * inv, (c.x() - b.x()) * inv,
             (c.y() - a.y()) * inv, (a.x() - c.x()) * inv,
             (a.y() - b.y()) * inv, (b.x() - a.x()) * inv;
  return g;
}

Eigen::Matrix3d triangle_mass(const Point& a, const Point& b, const Point& c) {
  const double area = triangle_geometry(a, b, c).area;
  Eigen::Matrix3d m;
  m << 2, 1, 1, 1, 2, 1, 1, 1, 2;
  return (area / 12.0) * m;
}

namespace {

template <typename ElementKernel>
SparseMatrix assemble(const Mesh& mesh, ElementKernel&& kernel) {
  std::vector<Triplet> trips;
  trips.reserve(9 * mesh.num_elements());
  for (Index t = 0; t < mesh.num_elements(); ++t) {
    const auto tri = mesh.triangles.row(t);
    const Point a = mesh.nodes.row(tri[0]);
    const Point b = mesh.nodes.row(tri[1]);
    const Point c = mesh.nodes.row(tri[2]);
    const Eigen::Matrix3d local = kernel(t, tri, triangle_geometry(a, b, c));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) trips.emplace_back(tri[i], tri[j], local(i, j));
  }
  SparseMatrix out(mesh.num_nodes(), mesh.num_nodes());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

double element_average(const Vector& field, const Eigen::Matrix<int, 1, 3>& tri) {
  return (field[tri[0]] + field[tri[1]] + field[tri[2]]) / 3.0;
}

}  // namespace

SparseMatrix assemble_mass_matrix(const Mesh& mesh) {
  return assemble(mesh, [](Index, const auto&, const TriangleGeometry& g) {
    Eigen::Matrix3d m;
    m << 2, 1, 1, 1, 2, 1, 1, 1, 2;
    return Eigen::Matrix3d((g.area / 12.0) * m);
  });
}

MassMatrix assemble_mass(const Mesh& mesh) { return MassMatrix(assemble_mass_matrix(mesh)); }

SparseMatrix assemble_stiffness(const Mesh& mesh, double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("assemble_stiffness: diffusion must be positive");
  return assemble(mesh, [kappa](Index, const auto&, const TriangleGeometry& g) {
    return Eigen::Matrix3d(kappa * g.area * g.grads * g.grads.transpose());
  });
}

SparseMatrix assemble_stiffness(const Mesh& mesh, const Vector& kappa) {
  if (kappa.size() != mesh.num_nodes())
    throw std::invalid_argument("assemble_stiffness: field size mismatch");
  if (kappa.minCoeff() <= 0.0)
    throw std::invalid_argument("assemble_stiffness: diffusion must be positive everywhere");
  return assemble(mesh, [&kappa](Index, const auto& tri, const TriangleGeometry& g) {
    return Eigen::Matrix3d(element_average(kappa, tri) * g.area * g.grads * g.grads.transpose());
  });
}

SparseMatrix assemble_advection(const Mesh& mesh, const Point& velocity) {
  return assemble(mesh, [&velocity](Index, const auto&, const TriangleGeometry& g) {
    Eigen::Matrix3d local;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) local(i, j) = (g.area / 3.0) * g.grads.row(j).dot(velocity);
    return local;
  });
}

SparseMatrix assemble_darcy_advection(const Mesh& mesh, const Vector& kappa, const Vector& p) {
  if (p.size() != mesh.num_nodes() || kappa.size() != mesh.num_nodes())
    throw std::invalid_argument("assemble_darcy_advection: field size mismatch");
  return assemble(mesh, [&](Index, const auto& tri, const TriangleGeometry& g) {
    const double kbar = element_average(kappa, tri);
    const Point grad_p = g.grads.transpose() *
                         Eigen::Vector3d(p[tri[0]], p[tri[1]], p[tri[2]]);
    Eigen::Matrix3d local;
    for (int i = 0; i < 3; ++i) {
      const double row = (g.area / 3.0) * kbar * g.grads.row(i).dot(grad_p);
      for (int j = 0; j < 3; ++j) local(i, j) = row;
    }
    return local;
  });
}

LinearSystem::LinearSystem(const Mesh& mesh, const SparseMatrix& full_matrix,
                           const BoundarySpec& bcs)
    : counter_(std::make_shared<std::atomic<long>>(0)) {
  const Index n = full_matrix.rows();
  if (n != mesh.num_nodes()) throw std::invalid_argument("LinearSystem: matrix/mesh mismatch");

  constrained_.assign(static_cast<size_t>(n), 0);
  bc_values_ = Vector::Zero(n);

  EdgeSet seen = 0;
  for (const auto& [edges, value] : bcs.dirichlet) {
    if (edges & seen) throw std::invalid_argument("BoundarySpec: Dirichlet edge sets overlap");
    seen |= edges;
    for (int node : mesh.boundary_nodes(edges)) {
      constrained_[static_cast<size_t>(node)] = 1;
      bc_values_[node] = value;
    }
  }
  for (Index i = 0; i < n; ++i)
    if (constrained_[static_cast<size_t>(i)]) constrained_list_.push_back(static_cast<int>(i));

  // move constrained columns to the rhs, then clear rows/columns
  bc_column_term_ = full_matrix * bc_values_;
  for (int i : constrained_list_) bc_column_term_[i] = 0.0;

  std::vector<Triplet> trips;
  trips.reserve(full_matrix.nonZeros() + constrained_list_.size());
  for (Index k = 0; k < full_matrix.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(full_matrix, k); it; ++it) {
      if (constrained_[static_cast<size_t>(it.row())] ||
          constrained_[static_cast<size_t>(it.col())])
        continue;
      trips.emplace_back(it.row(), it.col(), it.value());
    }
  for (int i : constrained_list_) trips.emplace_back(i, i, 1.0);

  matrix_.resize(n, n);
  matrix_.setFromTriplets(trips.begin(), trips.end());
  lu_.compute(matrix_);
  if (lu_.info() != Eigen::Success)
    throw std::runtime_error("LinearSystem: factorization failed; constrained dofs: " +
                             std::to_string(constrained_list_.size()));
}

Vector LinearSystem::project_free(Vector v) const {
  for (int i : constrained_list_) v[i] = 0.0;
  return v;
}

Vector LinearSystem::constrained_solve(Vector rhs, bool transpose, bool with_bc_data) const {
  for (int i : constrained_list_) rhs[i] = 0.0;
  if (with_bc_data) {
    rhs -= bc_column_term_;
    for (int i : constrained_list_) rhs[i] = bc_values_[i];
  }
  counter_->fetch_add(1, std::memory_order_relaxed);
  Vector x = transpose ? Vector(lu_.transpose().solve(rhs)) : Vector(lu_.solve(rhs));
  return x;
}

Vector LinearSystem::solve(const Vector& load) const { return constrained_solve(load, false, true); }

Vector LinearSystem::solve_zero_bc(const Vector& load) const {
  return constrained_solve(load, false, false);
}

Vector LinearSystem::solve_transpose(const Vector& load) const {
  return constrained_solve(load, true, false);
}

SparseMatrix assemble_elliptic(const Mesh& mesh, const EllipticParams& params) {
  SparseMatrix a = params.diffusion_field ? assemble_stiffness(mesh, *params.diffusion_field)
                                          : assemble_stiffness(mesh, params.diffusion);
  if (params.velocity_field) {
    const Matrix& v = *params.velocity_field;
    if (v.rows() != mesh.num_nodes() || v.cols() != 2)
      throw std::invalid_argument("assemble_elliptic: velocity field must be N x 2");
    // elementwise-averaged nodal velocity, convective form
    std::vector<Triplet> trips;
    trips.reserve(9 * mesh.num_elements());
    for (Index t = 0; t < mesh.num_elements(); ++t) {
      const auto tri = mesh.triangles.row(t);
      const Point a0 = mesh.nodes.row(tri[0]), b0 = mesh.nodes.row(tri[1]),
                  c0 = mesh.nodes.row(tri[2]);
      const TriangleGeometry g = triangle_geometry(a0, b0, c0);
      const Point vbar = (v.row(tri[0]) + v.row(tri[1]) + v.row(tri[2])) / 3.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          trips.emplace_back(tri[i], tri[j], (g.area / 3.0) * g.grads.row(j).dot(vbar));
    }
    SparseMatrix adv(mesh.num_nodes(), mesh.num_nodes());
    adv.setFromTriplets(trips.begin(), trips.end());
    a += adv;
  } else if (params.velocity.squaredNorm() > 0.0) {
    a += assemble_advection(mesh, params.velocity);
  }
  if (params.reaction != 0.0) a += SparseMatrix(params.reaction * assemble_mass_matrix(mesh));
  return a;
}

Vector solve_elliptic(const Mesh& mesh, const EllipticParams& params, const Vector& rhs_field,
                      const BoundarySpec& bcs) {
  if (bcs.dirichlet.empty() && !(params.reaction > 0.0))
    throw std::invalid_argument(
        "solve_elliptic: pure Neumann problem needs a positive reaction term");
  const SparseMatrix a = assemble_elliptic(mesh, params);
  const LinearSystem system(mesh, a, bcs);
  return system.solve(assemble_mass_matrix(mesh) * rhs_field);
}

ObservationOperator::ObservationOperator(const Mesh& mesh, std::vector<Point> coords)
    : coords_(std::move(coords)) {
  std::vector<Triplet> trips;
  trips.reserve(3 * coords_.size());
  for (size_t s = 0; s < coords_.size(); ++s) {
    const PointLocation loc = locate_point(mesh, coords_[s]);
    for (int i = 0; i < 3; ++i)
      if (loc.weights[i] != 0.0)
        trips.emplace_back(static_cast<Index>(s), loc.nodes[i], loc.weights[i]);
  }
  matrix_.resize(static_cast<Index>(coords_.size()), mesh.num_nodes());
  matrix_.setFromTriplets(trips.begin(), trips.end());
}

Vector apply_observation(const Mesh& mesh, const std::vector<Point>& coords, const Vector& state) {
  return ObservationOperator(mesh, coords).apply(state);
}

std::vector<Point> sensor_grid(int per_side) {
  if (per_side < 1) throw std::invalid_argument("sensor_grid: per_side must be >= 1");
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(per_side) * per_side);
  const double h = 1.0 / (per_side + 1);
  for (int j = 1; j <= per_side; ++j)
    for (int i = 1; i <= per_side; ++i) pts.emplace_back(i * h, j * h);
  return pts;
}

}  // namespace goed
