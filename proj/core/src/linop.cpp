#include "goed/linop.hpp"

namespace goed {

double adjoint_defect(const LinearMap& op, const MassMatrix* in_mass, const MassMatrix* out_mass,
                      int pairs, std::uint64_t seed) {
  const Index n = op.in_dim();
  const Index d = op.out_dim();
  double worst = 0.0;
  for (int j = 0; j < pairs; ++j) {
    NormalStream rng(seed, static_cast<std::uint64_t>(j));
    const Vector u = rng.draw(n);
    const Vector z = rng.draw(d);
    const Vector tu = op.apply(u);
    const Vector tz = op.adjoint_apply(z);
    const double lhs = out_mass ? out_mass->inner(tu, z) : tu.dot(z);
    const double rhs = in_mass ? in_mass->inner(u, tz) : u.dot(tz);
    const double nu = in_mass ? in_mass->norm(u) : u.norm();
    const double nz = out_mass ? out_mass->norm(z) : z.norm();
    const double scale = std::max(nu * nz, 1e-300);
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

}  // namespace goed
