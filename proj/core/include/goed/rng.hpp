#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "goed/types.hpp"

namespace goed {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seeded stream of standard normal variates.
///
/// Each (seed, stream) pair yields an independent substream, so results are
/// reproducible regardless of the order in which substreams are consumed.
/// Normals come from an explicit Box-Muller transform on 53-bit uniforms;
/// the sequence depends only on (seed, stream) and the draw count.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t s = seed;
    (void)splitmix64(s);
    s ^= 0xd1b54a32d192ed03ULL * (stream + 1);
    gen_.seed(splitmix64(s));
  }

  double uniform() {
    // in (0,1), never exactly 0 or 1
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double next() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  Vector draw(Index n) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = next();
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace goed
