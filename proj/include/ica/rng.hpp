#pragma once

#include <cstdint>
#include <random>

namespace ica {

// splitmix64 step; the basis of the seed-derivation scheme.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic combination of a master seed with stream coordinates.
// Replication r at sample-size index s gets stream mix64(master, s, r).
std::uint64_t mix64(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

// Seeded generator producing platform-independent uniforms and normals
// (std::mt19937_64 bit stream, explicit conversions; no std distributions,
// whose sequences vary across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform on the open interval (0, 1)
  double uniform() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // standard normal, Box-Muller with a cached spare
  double normal();

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ica
