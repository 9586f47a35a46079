#include "snlw/rng.hpp"

#include <cmath>
#include <numbers>

namespace snlw {

std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (b * 0xD6E8FEB86659FD93ull);
  return splitmix64_next(s);
}

// (0, 1]
double uniform_open_left(std::uint64_t bits) { return ((bits >> 11) + 1) * 0x1.0p-53; }
// [0, 1)
double uniform(std::uint64_t bits) { return (bits >> 11) * 0x1.0p-53; }

}  // namespace

std::array<double, 4> NoiseStream::normals(std::uint64_t step, int k1, int k2) const {
  const auto mode = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(k1)) << 32) |
                    static_cast<std::uint32_t>(k2);
  std::uint64_t state = mix(mix(mix(seed_, 0x5EED), step), mode);
  std::array<double, 4> out{};
  for (int pair = 0; pair < 2; ++pair) {
    const double u1 = uniform_open_left(splitmix64_next(state));
    const double u2 = uniform(splitmix64_next(state));
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    out[2 * pair] = r * std::cos(phi);
    out[2 * pair + 1] = r * std::sin(phi);
  }
  return out;
}

}  // namespace snlw
