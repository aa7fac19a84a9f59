#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/SparseLU>

#include "goed/linop.hpp"
#include "goed/mesh.hpp"

namespace goed {

/// Element matrices for linear (P1) triangles.
struct TriangleGeometry {
  double area;
  Eigen::Matrix<double, 3, 2> grads;  // gradients of the three shape functions
};
TriangleGeometry triangle_geometry(const Point& a, const Point& b, const Point& c);

/// Exact element mass matrix (A/12) [[2,1,1],[1,2,1],[1,1,2]].
Eigen::Matrix3d triangle_mass(const Point& a, const Point& b, const Point& c);

/// Global mass matrix M_ij = int phi_i phi_j.
MassMatrix assemble_mass(const Mesh& mesh);
SparseMatrix assemble_mass_matrix(const Mesh& mesh);

/// Stiffness int kappa grad(u) . grad(phi); kappa elementwise-averaged when a
/// nodal field is given.
SparseMatrix assemble_stiffness(const Mesh& mesh, double kappa);
SparseMatrix assemble_stiffness(const Mesh& mesh, const Vector& kappa);

/// Convective advection int (v . grad(u)) phi for constant velocity.
SparseMatrix assemble_advection(const Mesh& mesh, const Point& velocity);

/// Conservative Darcy advection int u kappa grad(p) . grad(phi); row = test
/// function, column = trial.  Linear in the driving potential p.
SparseMatrix assemble_darcy_advection(const Mesh& mesh, const Vector& kappa, const Vector& p);

struct BoundarySpec {
  /// (edge set, value) pairs imposed as Dirichlet data; every remaining
  /// boundary edge is zero-flux Neumann.  Edge sets must be disjoint.
  std::vector<std::pair<EdgeSet, double>> dirichlet;

  static BoundarySpec none() { return {}; }
  static BoundarySpec zero_everywhere() { return {{{kAllEdges, 0.0}}}; }
};

/// Constrained, factorized linear system.  Dirichlet conditions are imposed
/// by symmetric elimination: constrained rows/columns are cleared, the
/// diagonal set to one, and column contributions moved to the right-hand
/// side.  Solves are counted (shared across copies) so tests can assert
/// per-operation solve budgets.
class LinearSystem {
 public:
  LinearSystem(const Mesh& mesh, const SparseMatrix& full_matrix, const BoundarySpec& bcs);

  Index dim() const { return matrix_.rows(); }
  const SparseMatrix& matrix() const { return matrix_; }
  bool is_constrained(Index i) const { return constrained_[static_cast<size_t>(i)]; }
  const std::vector<int>& constrained_dofs() const { return constrained_list_; }

  /// Solve with the stored Dirichlet data: load is the unconstrained
  /// right-hand side (e.g. M f); boundary values are imposed exactly.
  Vector solve(const Vector& load) const;

  /// Solve the linear part: homogeneous Dirichlet data regardless of the
  /// stored boundary values.
  Vector solve_zero_bc(const Vector& load) const;

  /// Transposed solve with homogeneous Dirichlet data (adjoint systems).
  Vector solve_transpose(const Vector& load) const;

  /// Zero out constrained entries of a residual/load vector.
  Vector project_free(Vector v) const;

  long solve_count() const { return counter_->load(); }

 private:
  Vector constrained_solve(Vector rhs, bool transpose, bool with_bc_data) const;

  SparseMatrix matrix_;
  Eigen::SparseLU<SparseMatrix> lu_;
  std::vector<char> constrained_;
  std::vector<int> constrained_list_;
  Vector bc_values_;       // g at constrained dofs, 0 elsewhere
  Vector bc_column_term_;  // sum_j A[:, j] g_j over constrained j, cleared at constrained rows
  std::shared_ptr<std::atomic<long>> counter_;
};

struct EllipticParams {
  double diffusion = 1.0;
  std::optional<Vector> diffusion_field;  // nodal kappa, overrides `diffusion`
  Point velocity = Point::Zero();
  std::optional<Matrix> velocity_field;  // N x 2 nodal velocity, overrides `velocity`
  double reaction = 0.0;
};

SparseMatrix assemble_elliptic(const Mesh& mesh, const EllipticParams& params);

/// One-shot Galerkin solve of -div(kappa grad u) + v.grad(u) + c u = rhs.
/// The right-hand side is a nodal field (tested against the basis via M).
Vector solve_elliptic(const Mesh& mesh, const EllipticParams& params, const Vector& rhs_field,
                      const BoundarySpec& bcs);

/// Pointwise observation of a nodal field: rows are barycentric weights of
/// the sensor locations, so each row has at most 3 nonzeros summing to one.
class ObservationOperator {
 public:
  ObservationOperator(const Mesh& mesh, std::vector<Point> coords);

  Index num_sensors() const { return matrix_.rows(); }
  const SparseMatrix& matrix() const { return matrix_; }
  const std::vector<Point>& coords() const { return coords_; }

  Vector apply(const Vector& field) const { return matrix_ * field; }
  Vector apply_transpose(const Vector& z) const { return matrix_.transpose() * z; }

 private:
  SparseMatrix matrix_;  // d x N
  std::vector<Point> coords_;
};

Vector apply_observation(const Mesh& mesh, const std::vector<Point>& coords, const Vector& state);

/// Equally spaced interior candidate grid: per_side^2 points at
/// ((i+1)/(per_side+1), (j+1)/(per_side+1)).
std::vector<Point> sensor_grid(int per_side);

}  // namespace goed
