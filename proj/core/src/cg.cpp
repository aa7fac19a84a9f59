#include "goed/cg.hpp"

namespace goed {

Vector pcg_solve(const LinearMap& op, const MassMatrix& mass, const Vector& rhs,
                 const LinearMap* prec, const CgOptions& opts, CgStats* stats) {
  const Index n = rhs.size();
  const int cap = opts.max_iterations > 0 ? opts.max_iterations : static_cast<int>(5 * n);

  const double bnorm = mass.norm(rhs);
  if (bnorm == 0.0) {
    if (stats) *stats = {0, 0.0};
    return Vector::Zero(n);
  }

  Vector x = Vector::Zero(n);
  Vector r = rhs;
  Vector z = prec ? prec->apply(r) : r;
  Vector p = z;
  double rho = mass.inner(r, z);

  for (int it = 1; it <= cap; ++it) {
    const Vector ap = op.apply(p);
    const double denom = mass.inner(p, ap);
    if (!(denom > 0.0))
      throw CgError("pcg_solve: operator not positive definite along search direction",
                    mass.norm(r) / bnorm);
    const double alpha = rho / denom;
    x += alpha * p;
    r -= alpha * ap;

    const double rel = mass.norm(r) / bnorm;
    if (rel <= opts.tol) {
      if (stats) *stats = {it, rel};
      return x;
    }

    z = prec ? prec->apply(r) : r;
    const double rho_next = mass.inner(r, z);
    p = z + (rho_next / rho) * p;
    rho = rho_next;
  }

  const double rel = mass.norm(rhs - op.apply(x)) / bnorm;
  throw CgError("pcg_solve: no convergence within iteration cap (relative residual " +
                    std::to_string(rel) + ")",
                rel);
}

}  // namespace goed
