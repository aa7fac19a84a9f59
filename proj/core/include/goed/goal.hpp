#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "goed/fem.hpp"

namespace goed {

/// Scalar goal functional of the inversion parameter with first and second
/// derivatives.  gradient returns the M-Riesz representative; hess_action is
/// self-adjoint in the M inner product.
class GoalFunctional {
 public:
  virtual ~GoalFunctional() = default;
  virtual Index dim() const = 0;
  virtual double value(const Vector& m) const = 0;
  virtual Vector gradient(const Vector& m) const = 0;
  virtual Vector hess_action(const Vector& m, const Vector& dm) const = 0;
};

struct Rect {
  double x0, x1, y0, y1;
  bool contains(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
  bool inside_unit_square() const {
    return x0 >= 0 && x1 <= 1 && y0 >= 0 && y1 <= 1 && x0 < x1 && y0 < y1;
  }
};

/// Nodal indicator of a union of axis-aligned rectangles.
Vector indicator_field(const Mesh& mesh, const std::vector<Rect>& rects);

struct GaussianBump {
  Point center;
  double width;      // isotropic standard deviation
  double amplitude;
};
Vector bump_field(const Mesh& mesh, const std::vector<GaussianBump>& bumps);

/// Permeability channel: smooth y-profile between a low background and a
/// high-permeability band running left to right.
struct ChannelSpec {
  double low = 0.1;
  double high = 1.0;
  double center = 0.5;
  double width = 0.12;
  double wiggle = 0.0;  // amplitude of a sinusoidal centerline perturbation
};
Vector channel_field(const Mesh& mesh, const ChannelSpec& spec);

/// Quadratic goal Z(m) = 1/2 |R u(m)|_M^2 with u the PDE state and R the
/// nodal restriction to a subdomain; equivalently Z = 1/2 <A m, m>_M with
/// A = S* R* R S applied matrix-free (one solve and one transposed solve).
class QuadraticGoal : public GoalFunctional {
 public:
  QuadraticGoal(std::shared_ptr<const LinearSystem> state, std::shared_ptr<const MassMatrix> mass,
                Vector region_mask);

  Index dim() const override { return mass_->dim(); }
  double value(const Vector& m) const override;
  Vector gradient(const Vector& m) const override { return apply_A(m); }
  Vector hess_action(const Vector&, const Vector& dm) const override { return apply_A(dm); }

  Vector apply_A(const Vector& v) const;
  std::shared_ptr<const LinearMap> hessian_map() const;
  long solve_count() const { return state_->solve_count(); }

 private:
  std::shared_ptr<const LinearSystem> state_;
  std::shared_ptr<const MassMatrix> mass_;
  Vector mask_;
};

/// Finite-dimensional quadratic functional 1/2 <A m, m>_M + <b, m>_M + c.
class GenericQuadraticGoal : public GoalFunctional {
 public:
  GenericQuadraticGoal(std::shared_ptr<const LinearMap> a, Vector b, double c,
                       std::shared_ptr<const MassMatrix> mass);

  Index dim() const override { return mass_->dim(); }
  double value(const Vector& m) const override;
  Vector gradient(const Vector& m) const override;
  Vector hess_action(const Vector&, const Vector& dm) const override { return a_->apply(dm); }

 private:
  std::shared_ptr<const LinearMap> a_;
  Vector b_;
  double c_;
  std::shared_ptr<const MassMatrix> mass_;
};

/// Ingredients of the porous-medium tracer problem: a pressure equation
/// driven by the inversion parameter and a transport equation advected by
/// the Darcy velocity -kappa grad p.
struct TracerProblem {
  Vector kappa;        // nodal permeability, > 0
  double alpha;        // tracer diffusion
  Vector source;       // tracer source f
  Vector region_mask;  // indicator of Omega*
  BoundarySpec pressure_bc;
  BoundarySpec tracer_bc;
};

/// Goal Z(m) = int_{Omega*} c(m): pressure solve, transport solve, then
/// mass-weighted quadrature against the subdomain indicator.  Gradient and
/// Hessian actions come from the adjoint and incremental systems of the
/// associated Lagrangian; the state/adjoint quadruple at an expansion point
/// is cached and immutable, so Hessian actions cost exactly four additional
/// solves on the already-factorized operators.
class TracerGoal : public GoalFunctional {
 public:
  TracerGoal(const Mesh& mesh, std::shared_ptr<const MassMatrix> mass, TracerProblem problem);

  Index dim() const override { return mass_->dim(); }
  double value(const Vector& m) const override;      // 2 solves
  Vector gradient(const Vector& m) const override;   // 4 solves
  Vector hess_action(const Vector& m, const Vector& dm) const override;  // 4 solves

  /// Pressure system (shared with the forward map of the inverse problem).
  std::shared_ptr<const LinearSystem> pressure_system() const { return pressure_; }
  const TracerProblem& problem() const { return problem_; }
  long solve_count() const;

  struct Linearization {
    Vector m, p, c, zeta, lambda;
    std::shared_ptr<const LinearSystem> transport;
    SparseMatrix advection_zeta;  // N_c(zeta), reused by the lambda-hat solve
  };
  std::shared_ptr<const Linearization> linearize(const Vector& m) const;

 private:
  std::shared_ptr<const LinearSystem> make_transport(const Vector& p) const;

  const Mesh* mesh_;
  std::shared_ptr<const MassMatrix> mass_;
  TracerProblem problem_;
  std::shared_ptr<const LinearSystem> pressure_;
  mutable std::mutex cache_mutex_;
  mutable std::shared_ptr<const Linearization> cache_;
};

}  // namespace goed
