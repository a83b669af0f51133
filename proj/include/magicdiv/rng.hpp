#ifndef MAGICDIV_RNG_HPP
#define MAGICDIV_RNG_HPP

#include <cstdint>

namespace magicdiv {

/// splitmix64 (Steele, Lea, Flood 2014). Chosen as the reproducibility PRNG:
/// the algorithm is tiny, exactly specified, and seeding from an arbitrary
/// 64-bit counter yields an independent stream, so sweep reports carry the
/// identifier "splitmix64" and are byte-reproducible from (seed, plan) alone.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  static constexpr const char* kAlgorithmId = "splitmix64";

 private:
  uint64_t state_;
};

}  // namespace magicdiv

#endif  // MAGICDIV_RNG_HPP
