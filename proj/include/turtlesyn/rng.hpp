#pragma once

#include <cstdint>
#include <vector>

namespace tsyn {

// Deterministic PRNG used by every randomized step in the pipeline.
// splitmix64 keeps results identical across platforms and standard
// libraries, which the reproducibility guarantees depend on.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, n). Rejection sampling keeps the distribution exact.
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % n;
  }

  // Uniform value in [lo, hi], inclusive.
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1))); }

  bool chance(double p) { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_;
};

inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Seed derivation rule: every random decision draws from a stream whose seed
// is derived from the request seed plus a stage tag and a per-candidate index.
//   derived = mix64(mix64(base ^ stage * C1) ^ index * C2)
// Stage tags: 1 = template instantiation, 2 = world generation.
inline uint64_t derive_seed(uint64_t base, uint64_t stage, uint64_t index) {
  uint64_t a = mix64(base ^ stage * 0x9e3779b97f4a7c15ull);
  return mix64(a ^ index * 0xc2b2ae3d27d4eb4full);
}

}  // namespace tsyn
