#pragma once

#include <cstdint>

namespace bess {

/// splitmix64 generator.  Small, fast, and stable across platforms, which
/// matters because test corpora and verification transcripts are replayed
/// from 64-bit seeds.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, bound) via rejection; bound must be nonzero.
  uint64_t below(uint64_t bound) {
    const uint64_t limit = bound * ((~uint64_t{0}) / bound);
    uint64_t r = next();
    while (r >= limit) r = next();
    return r % bound;
  }

  /// Derive an independent stream (for parallel corpora from one seed).
  Rng fork() { return Rng(next() ^ 0xa5a5a5a5a5a5a5a5ull); }

 private:
  uint64_t state_;
};

}  // namespace bess
