#pragma once

#include <cstdint>

namespace grouplaw {

// Seeded, reproducible generator (splitmix64 core). Identical output on
// every platform; substream(i) derives an independent stream from the
// original seed, so sharded sampling is a pure function of the seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n); unbiased via rejection. n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  double unit() { return (next() >> 11) * 0x1.0p-53; }

  // Independent stream keyed by (original seed, index); draws made on this
  // object so far do not affect it.
  Rng substream(std::uint64_t index) const {
    Rng mixer(seed_ ^ (0xA5A5A5A5A5A5A5A5ULL + index * 0x9E3779B97F4A7C15ULL));
    mixer.next();
    return Rng(mixer.next());
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace grouplaw
