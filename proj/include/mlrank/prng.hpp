#ifndef MLRANK_PRNG_HPP
#define MLRANK_PRNG_HPP

#include <cstdint>

namespace mlrank {

// Counter-based deterministic generator: word c of the stream with seed s is
// splitmix64_mix(s + (c+1) * GAMMA).  Stateless, so enumeration order and
// thread count cannot change the stream.  The exact definition is part of the
// file-format contract (see README) so independent implementations agree.
struct Rng {
  uint64_t seed = 0;

  static constexpr uint64_t gamma = 0x9E3779B97F4A7C15ull;

  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  uint64_t at(uint64_t counter) const { return mix(seed + (counter + 1) * gamma); }

  // value in [0, bound), bound > 0
  uint64_t at_below(uint64_t counter, uint64_t bound) const { return at(counter) % bound; }

  // value in [0, 1)
  double at_unit(uint64_t counter) const {
    return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
  }
};

}  // namespace mlrank

#endif
