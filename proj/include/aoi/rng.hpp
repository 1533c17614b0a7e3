#pragma once

// Deterministic random streams.  std::mt19937_64 output is fixed by the
// standard; the std:: distributions are not, so variates are derived here.
//
// Stream splitting: replication r of a run with master seed s uses
// mt19937_64 seeded with the (r+1)-th output of SplitMix64 started at s.

#include <cmath>
#include <cstdint>
#include <random>

namespace aoi {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t replication_seed(std::uint64_t master_seed, std::uint64_t replication) {
  std::uint64_t state = master_seed + replication * 0x9E3779B97F4A7C15ULL;
  return splitmix64_next(state);
}

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Exponential with the given rate by inversion.
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace aoi
