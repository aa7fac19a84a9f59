#pragma once

#include <cstdint>

#include "goed/linop.hpp"

namespace goed {

/// Leading eigenpairs of a self-adjoint PSD operator on the M-weighted space.
struct SpectralDecomposition {
  Vector eigenvalues;   // nonincreasing
  Matrix eigenvectors;  // M-orthonormal columns
  bool rank_deficient = false;
  int requested = 0;

  int rank() const { return static_cast<int>(eigenvalues.size()); }

  /// gamma_i = lambda_i / (1 + lambda_i), clipped to [0, 1).
  Vector gammas() const {
    Vector g(eigenvalues.size());
    for (Index i = 0; i < eigenvalues.size(); ++i) {
      const double l = std::max(eigenvalues[i], 0.0);
      g[i] = l / (1.0 + l);
    }
    return g;
  }
};

struct LanczosOptions {
  double tol = 1e-8;
  /// Krylov steps allowed beyond the requested count before giving up.
  int max_extra_iterations = 40;
  std::uint64_t seed = 0;
};

/// Lanczos iteration in the M inner product with full reorthogonalization.
/// Returns the k leading eigenpairs of `op`; each returned pair satisfies
/// |T v - lambda v|_M <= tol * max(lambda_1, 1).  If the Krylov space is
/// exhausted first (operator rank below k), the converged subset is returned
/// with rank_deficient set.
SpectralDecomposition lanczos_eigs(const LinearMap& op, const MassMatrix& mass, int k,
                                   const LanczosOptions& opts = {});

}  // namespace goed
