#pragma once

#include <cstdint>
#include <limits>

namespace spdpp {

// Purposes for which independent pseudorandom streams are derived from one
// user seed. Draws consumed in one phase never shift another phase.
enum class Stream : std::uint64_t {
  cloud = 1,
  spectrum = 2,
  eigen_step = 3,
  projection_step = 4,
  observed_set = 5,
  subsets = 6,
};

// xoshiro256** 1.0 seeded through SplitMix64. Stream derivation ("v1"):
// child seed = splitmix64(seed ^ splitmix64(purpose)). Satisfies
// UniformRandomBitGenerator, so it plugs into <random> distributions.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0);

  static Rng stream(std::uint64_t seed, Stream purpose);
  // Child generator for an arbitrary numbered substream (e.g. per replicate).
  Rng split(std::uint64_t index) const;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace spdpp
