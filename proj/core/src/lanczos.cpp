#include "goed/lanczos.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace goed {

namespace {

struct RitzPairs {
  Vector values;   // descending
  Matrix vectors;  // columns, in Krylov coordinates
  Vector residuals;
};

RitzPairs ritz_of_tridiagonal(const Vector& alpha, const Vector& beta, double beta_next) {
  const Index j = alpha.size();
  Matrix t = Matrix::Zero(j, j);
  for (Index i = 0; i < j; ++i) t(i, i) = alpha[i];
  for (Index i = 0; i + 1 < j; ++i) t(i, i + 1) = t(i + 1, i) = beta[i];
  Eigen::SelfAdjointEigenSolver<Matrix> es(t);
  RitzPairs out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  out.residuals.resize(j);
  for (Index i = 0; i < j; ++i)
    out.residuals[i] = std::abs(beta_next * out.vectors(j - 1, i));
  return out;
}

}  // namespace

SpectralDecomposition lanczos_eigs(const LinearMap& op, const MassMatrix& mass, int k,
                                   const LanczosOptions& opts) {
  const Index n = mass.dim();
  if (!op.self_adjoint()) throw std::invalid_argument("lanczos_eigs: operator must be self-adjoint");
  if (k < 1 || k > n) throw std::invalid_argument("lanczos_eigs: rank out of range");

  const int max_steps = static_cast<int>(std::min<Index>(n, k + opts.max_extra_iterations));

  Matrix q(n, max_steps);
  Vector alpha(max_steps), beta(max_steps);
  NormalStream rng(opts.seed, 0x4c414e43ULL);

  Vector v = rng.draw(n);
  v /= mass.norm(v);
  q.col(0) = v;

  int steps = 0;
  bool exhausted = false;
  RitzPairs ritz;

  for (int j = 0; j < max_steps; ++j) {
    Vector z = op.apply(q.col(j));
    alpha[j] = mass.inner(z, q.col(j));
    z -= alpha[j] * q.col(j);
    if (j > 0) z -= beta[j - 1] * q.col(j - 1);
    // full reorthogonalization, two passes
    for (int pass = 0; pass < 2; ++pass) {
      const Vector coeffs = q.leftCols(j + 1).transpose() * mass.apply(z);
      z -= q.leftCols(j + 1) * coeffs;
    }
    const double b = mass.norm(z);
    steps = j + 1;

    ritz = ritz_of_tridiagonal(alpha.head(steps), beta.head(std::max(0, steps - 1)), b);
    const double scale = std::max(ritz.values.size() ? ritz.values[0] : 0.0, 1.0);

    if (b <= 1e-13 * scale) {
      exhausted = true;  // invariant subspace: every Ritz pair is exact
      break;
    }

    if (steps >= k) {
      bool done = true;
      for (int i = 0; i < k; ++i)
        if (ritz.residuals[i] > opts.tol * scale) { done = false; break; }
      if (done) break;
    }

    if (j + 1 < max_steps) {
      beta[j] = b;
      q.col(j + 1) = z / b;
    }
  }

  const int avail = steps;
  const int keep = std::min(k, avail);

  if (!exhausted && avail >= k) {
    const double scale = std::max(ritz.values[0], 1.0);
    for (int i = 0; i < keep; ++i)
      if (ritz.residuals[i] > opts.tol * scale)
        throw std::runtime_error("lanczos_eigs: did not converge within the iteration budget");
  }

  SpectralDecomposition out;
  out.requested = k;
  out.rank_deficient = exhausted && avail < k;
  out.eigenvalues = ritz.values.head(keep);
  out.eigenvectors = q.leftCols(avail) * ritz.vectors.leftCols(keep);
  // polish M-orthonormality of the returned block
  for (int i = 0; i < keep; ++i) {
    for (int l = 0; l < i; ++l)
      out.eigenvectors.col(i) -=
          mass.inner(out.eigenvectors.col(i), out.eigenvectors.col(l)) * out.eigenvectors.col(l);
    const double nrm = mass.norm(out.eigenvectors.col(i));
    if (nrm > 0) out.eigenvectors.col(i) /= nrm;
  }
  return out;
}

}  // namespace goed
