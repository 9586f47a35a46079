#pragma once

#include <array>
#include <cstdint>

namespace snlw {

/// Version of the random stream layout. Bumped whenever the mapping
/// (seed, step, mode) -> normals changes; runs with equal version, seed and
/// configuration are bit-identical.
inline constexpr int kRngStreamVersion = 1;

/// One step of the SplitMix64 generator (Steele, Lea & Flood 2014).
std::uint64_t splitmix64_next(std::uint64_t& state);

/// Counter-based Gaussian source for the per-mode white-noise increments.
///
/// Every (step, k1, k2) triple owns an independent SplitMix64 sequence whose
/// starting state is a hash of the seed and the triple; four uniforms from it
/// are turned into four standard normals by the Box-Muller transform. Draws
/// depend only on the wavenumber, never on the cutoff or grid size, which is
/// what couples simulations run at different cutoffs N.
class NoiseStream {
 public:
  explicit NoiseStream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::array<double, 4> normals(std::uint64_t step, int k1, int k2) const;

 private:
  std::uint64_t seed_;
};

}  // namespace snlw
