#pragma once

#include <stdexcept>
#include <string>

#include "goed/linop.hpp"

namespace goed {

struct CgOptions {
  double tol = 1e-10;      // relative residual in the M norm
  int max_iterations = 0;  // 0 -> 5 * dimension
};

struct CgStats {
  int iterations = 0;
  double relative_residual = 0.0;
};

class CgError : public std::runtime_error {
 public:
  CgError(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Preconditioned conjugate gradients for an operator that is self-adjoint
/// and positive definite on the M-weighted space.  `prec` applies an
/// approximate inverse (also M-self-adjoint); pass nullptr for plain CG.
Vector pcg_solve(const LinearMap& op, const MassMatrix& mass, const Vector& rhs,
                 const LinearMap* prec, const CgOptions& opts = {}, CgStats* stats = nullptr);

}  // namespace goed
