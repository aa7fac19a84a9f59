#pragma once

#include <functional>
#include <memory>
#include <stdexcept>

#include <Eigen/SparseCholesky>

#include "goed/rng.hpp"
#include "goed/types.hpp"

namespace goed {

/// Finite element mass matrix.  Carrier of the discretized L2 inner product
/// <u,v>_M = u^T M v on coefficient vectors, and of the white-noise sampler
/// xi ~ N(0, M^{-1}) used by trace estimation and prior sampling.
class MassMatrix {
 public:
  explicit MassMatrix(SparseMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("mass matrix must be square");
    llt_.compute(m_);
    if (llt_.info() != Eigen::Success)
      throw std::runtime_error("mass matrix Cholesky factorization failed (not SPD?)");
  }

  static MassMatrix identity(Index n) {
    SparseMatrix m(n, n);
    m.setIdentity();
    return MassMatrix(std::move(m));
  }

  Index dim() const { return m_.rows(); }
  const SparseMatrix& matrix() const { return m_; }

  Vector apply(const Vector& v) const { return m_ * v; }
  Vector solve(const Vector& v) const { return llt_.solve(v); }

  double inner(const Vector& u, const Vector& v) const {
    if (u.size() != dim() || v.size() != dim())
      throw std::invalid_argument("m_inner: dimension mismatch");
    return u.dot(m_ * v);
  }
  double norm(const Vector& u) const { return std::sqrt(std::max(0.0, inner(u, u))); }

  /// Sum of all entries; equals the domain area for a partition of unity.
  double total() const { return m_.sum(); }

  /// Draw xi ~ N(0, M^{-1}) by back-substituting the Cholesky factor:
  /// M = L L^T, xi = L^{-T} z with z standard normal, so E[xi xi^T] = M^{-1}.
  Vector sample_white(NormalStream& rng) const {
    const Vector z = rng.draw(dim());
    // natural ordering: no permutation to undo
    return llt_.matrixU().solve(z);
  }

  Matrix dense() const { return Matrix(m_); }

 private:
  SparseMatrix m_;
  Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::NaturalOrdering<int>> llt_;
};

inline double m_inner(const Vector& u, const Vector& v, const MassMatrix& mass) {
  return mass.inner(u, v);
}

/// Linear operator between the mass-weighted parameter space and/or Euclidean
/// observation space.  adjoint_apply is the adjoint with respect to the inner
/// products of the two spaces involved (M-weighted on the parameter side,
/// Euclidean on the observation side).
class LinearMap {
 public:
  virtual ~LinearMap() = default;
  virtual Index in_dim() const = 0;
  virtual Index out_dim() const = 0;
  virtual bool self_adjoint() const { return false; }
  virtual Vector apply(const Vector& v) const = 0;
  virtual Vector adjoint_apply(const Vector& v) const = 0;
};

/// LinearMap backed by callables.  The main composition tool: operators like
/// F, C_pr, Gamma_po, H_z are wired together as closures over solver objects.
class FunctionMap : public LinearMap {
 public:
  using Fn = std::function<Vector(const Vector&)>;

  FunctionMap(Index in_dim, Index out_dim, Fn forward, Fn adjoint, bool self_adjoint = false)
      : in_(in_dim),
        out_(out_dim),
        fwd_(std::move(forward)),
        adj_(std::move(adjoint)),
        sa_(self_adjoint) {
    if (sa_ && in_ != out_)
      throw std::invalid_argument("self-adjoint map must have in_dim == out_dim");
  }

  static FunctionMap self_adjoint_map(Index n, Fn forward) {
    Fn copy = forward;
    return FunctionMap(n, n, std::move(forward), std::move(copy), true);
  }

  Index in_dim() const override { return in_; }
  Index out_dim() const override { return out_; }
  bool self_adjoint() const override { return sa_; }
  Vector apply(const Vector& v) const override { return fwd_(v); }
  Vector adjoint_apply(const Vector& v) const override { return adj_(v); }

 private:
  Index in_, out_;
  Fn fwd_, adj_;
  bool sa_;
};

/// Dense coefficient-matrix operator on the M-weighted space.
/// The adjoint is taken in the M inner product: T* = M^{-1} T^T M.
class DenseOperatorMap : public LinearMap {
 public:
  DenseOperatorMap(Matrix op, const MassMatrix& mass, bool self_adjoint = false)
      : op_(std::move(op)), mass_(&mass), sa_(self_adjoint) {
    if (op_.rows() != mass.dim() || op_.cols() != mass.dim())
      throw std::invalid_argument("operator/mass dimension mismatch");
  }

  Index in_dim() const override { return op_.cols(); }
  Index out_dim() const override { return op_.rows(); }
  bool self_adjoint() const override { return sa_; }
  Vector apply(const Vector& v) const override { return op_ * v; }
  Vector adjoint_apply(const Vector& v) const override {
    if (sa_) return op_ * v;
    return mass_->solve(op_.transpose() * mass_->apply(v));
  }
  const Matrix& matrix() const { return op_; }

 private:
  Matrix op_;
  const MassMatrix* mass_;
  bool sa_;
};

/// Zero map, occasionally useful as a degenerate Hessian.
class ZeroMap : public LinearMap {
 public:
  explicit ZeroMap(Index n) : n_(n) {}
  Index in_dim() const override { return n_; }
  Index out_dim() const override { return n_; }
  bool self_adjoint() const override { return true; }
  Vector apply(const Vector&) const override { return Vector::Zero(n_); }
  Vector adjoint_apply(const Vector&) const override { return Vector::Zero(n_); }

 private:
  Index n_;
};

/// Max adjoint-pairing defect |<Tu,z>_out - <u,T*z>_in| / (|u| |z|) over a
/// number of random pairs.  Inner products are chosen per space: M-weighted
/// when a mass is supplied for that side, Euclidean otherwise.
double adjoint_defect(const LinearMap& op, const MassMatrix* in_mass, const MassMatrix* out_mass,
                      int pairs, std::uint64_t seed);

}  // namespace goed
