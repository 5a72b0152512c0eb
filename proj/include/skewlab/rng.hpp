#pragma once

#include <complex>
#include <cstdint>

namespace skewlab {

// Deterministic, platform-independent generator. std::uniform_*_distribution
// is not pinned across standard libraries, so frozen regression values go
// through this instead.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1), 53 random bits
  double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  std::complex<double> unit_phase() {
    double t = uniform01();
    return {std::cos(6.283185307179586476925286766559 * t),
            std::sin(6.283185307179586476925286766559 * t)};
  }
};

}  // namespace skewlab
