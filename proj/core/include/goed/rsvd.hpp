#pragma once

#include <cstdint>

#include "goed/linop.hpp"

namespace goed {

/// Low-rank SVD of an operator from the M-weighted parameter space to the
/// Euclidean observation space: op ~ left * diag(s) * right^*, where right^*
/// is the M-adjoint (right^* u = right^T M u).
struct LowRankSvd {
  Matrix left;            // d x r, Euclidean orthonormal columns
  Vector singular_values; // nonincreasing
  Matrix right;           // N x r, M-orthonormal columns
  double tail_estimate = 0.0;  // estimate of s_{r+1}, 0 when the factorization is exhaustive

  int rank() const { return static_cast<int>(singular_values.size()); }

  Vector apply(const MassMatrix& mass, const Vector& u) const {
    return left * (singular_values.asDiagonal() * (right.transpose() * mass.apply(u)));
  }
  Vector adjoint_apply(const Vector& z) const {
    return right * (singular_values.asDiagonal() * (left.transpose() * z));
  }
};

struct RsvdOptions {
  int oversample = 8;
  int power_iterations = 2;
  std::uint64_t seed = 0;
};

/// Randomized range finder with power iteration.  Orthonormalizations happen
/// in the geometry of each side: Euclidean QR in observation space, Cholesky
/// QR in the M inner product on the parameter side.
LowRankSvd randomized_svd(const LinearMap& op, const MassMatrix& mass, int rank,
                          const RsvdOptions& opts = {});

}  // namespace goed
