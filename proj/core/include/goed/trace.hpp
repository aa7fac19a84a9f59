#pragma once

#include <cstdint>

#include "goed/linop.hpp"

namespace goed {

/// Monte Carlo trace estimate (1/p) sum_j <T xi_j, xi_j>_M with probes
/// xi_j ~ N(0, M^{-1}).  Probe j is drawn from substream j of `seed`, so the
/// estimate is reproducible independent of evaluation order.
/// T must be self-adjoint on the M-weighted space.
double mc_trace(const LinearMap& op, const MassMatrix& mass, int probes, std::uint64_t seed);

}  // namespace goed
