#pragma once

#include <cstdint>
#include <vector>

namespace mmcp {

// Deterministic 64-bit generator (SplitMix64 core). We avoid <random>
// distributions on purpose: their output is not bit-stable across standard
// library implementations, and solver results must be byte-identical across
// runs and thread counts. Parallel code derives an independent sub-stream
// per work unit via derive(), never by sharing a generator.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound), bound >= 1. Rejection sampling keeps the
  // draw unbiased and identical on every platform.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  int next_int(int lo, int hi) {  // inclusive range [lo, hi]
    return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_real() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_real(double lo, double hi) { return lo + (hi - lo) * next_real(); }

  bool next_bool(double p) { return next_real() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {  // Fisher-Yates, deterministic
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// Derives an independent sub-stream seed from (seed, stream). Used so that
// work unit i of a parallel loop gets rng derive(seed, i) regardless of which
// thread runs it.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  Rng r(seed ^ (0xa0761d6478bd642fULL + stream * 0xe7037ed1a0b428dbULL));
  r.next_u64();
  return r.next_u64();
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return derive_seed(derive_seed(seed, a), b);
}

}  // namespace mmcp
