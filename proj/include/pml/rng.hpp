#pragma once

#include <cstdint>

namespace pml {

// SplitMix64 (Steele/Lea/Flood, as published in the reference sequence at
// https://prng.di.unimi.it/splitmix64.c). Pinned as the project-wide
// generator so seeded runs reproduce bit-for-bit on any platform. Streams
// are split by seeding one generator per agent/run from the outputs of a
// master generator.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53 significant bits.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi].
  double next_in(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

 private:
  std::uint64_t state_;
};

}  // namespace pml
