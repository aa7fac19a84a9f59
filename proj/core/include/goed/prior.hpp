#pragma once

#include <memory>
#include <vector>

#include <Eigen/SparseCholesky>

#include "goed/fem.hpp"
#include "goed/linop.hpp"

namespace goed {

/// Gaussian measure on the M-weighted coefficient space: mean plus covariance
/// action (self-adjoint PSD in the M inner product).  The optional square
/// root satisfies sqrt o sqrt = covariance.
struct GaussianMeasure {
  Vector mean;
  std::shared_ptr<const LinearMap> covariance;
  std::shared_ptr<const LinearMap> sqrt_covariance;  // may be null
};

/// Elliptic-operator prior: C_pr = E^2 with E the Galerkin solution operator
/// of a1 (m - a2 Lap m) = s under zero-flux boundary conditions.  Discretely
/// E = R^{-1} M with R = a1 (M + a2 K); E is self-adjoint and positive in the
/// M inner product, so C_pr^{1/2} = E.
class PriorOperator {
 public:
  PriorOperator(const Mesh& mesh, std::shared_ptr<const MassMatrix> mass, double a1, double a2);

  Index dim() const { return mass_->dim(); }
  double a1() const { return a1_; }
  double a2() const { return a2_; }
  const MassMatrix& mass() const { return *mass_; }

  /// E v: one elliptic solve.
  Vector apply_sqrt(const Vector& v) const;
  /// C_pr v = E(E v): two elliptic solves.
  Vector apply_cov(const Vector& v) const;
  /// C_pr^{-1} v = M^{-1} R M^{-1} R v.
  Vector apply_inv_cov(const Vector& v) const;

  /// One sample mean + E xi with xi ~ N(0, M^{-1}).
  Vector sample(const Vector& mean, NormalStream& rng) const;
  /// `count` samples on independent substreams of `seed`.
  std::vector<Vector> sample_prior(const Vector& mean, int count, std::uint64_t seed) const;

  GaussianMeasure measure(Vector mean) const;
  std::shared_ptr<const LinearMap> covariance_map() const;
  std::shared_ptr<const LinearMap> sqrt_covariance_map() const;

  long solve_count() const { return counter_->load(); }

 private:
  std::shared_ptr<const MassMatrix> mass_;
  double a1_, a2_;
  SparseMatrix r_;  // a1 (M + a2 K)
  Eigen::SimplicialLDLT<SparseMatrix> ldlt_;
  std::shared_ptr<std::atomic<long>> counter_;
};

}  // namespace goed
