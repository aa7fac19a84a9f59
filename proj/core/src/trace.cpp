#include "goed/trace.hpp"

#include <stdexcept>

namespace goed {

double mc_trace(const LinearMap& op, const MassMatrix& mass, int probes, std::uint64_t seed) {
  if (probes < 1) throw std::invalid_argument("mc_trace: probe count must be >= 1");
  if (!op.self_adjoint())
    throw std::invalid_argument("mc_trace: operator is not flagged self-adjoint on the M-space");
  if (op.in_dim() != mass.dim()) throw std::invalid_argument("mc_trace: dimension mismatch");

  double acc = 0.0;
  for (int j = 0; j < probes; ++j) {
    NormalStream rng(seed, static_cast<std::uint64_t>(j));
    const Vector xi = mass.sample_white(rng);
    acc += mass.inner(op.apply(xi), xi);
  }
  return acc / static_cast<double>(probes);
}

}  // namespace goed
