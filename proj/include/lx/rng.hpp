#pragma once

#include <cstdint>

namespace lx {

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Deterministic 64-bit stream; every random choice in the workbench flows
// through one of these, seeded explicitly.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    return mix64(z);
  }

  // Unbiased uniform draw from [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t residue = (UINT64_MAX % n + 1) % n;  // 2^64 mod n
    const std::uint64_t zone = UINT64_MAX - residue;
    std::uint64_t v;
    do {
      v = next();
    } while (v > zone);
    return v % n;
  }

 private:
  std::uint64_t state_;
};

// Independent stream seed for (master, index); index-addressable so parallel
// workers can replay any position without shared state.
inline std::uint64_t subseed(std::uint64_t master, std::uint64_t index) {
  return mix64(master + 0x9E3779B97F4A7C15ull * (index + 1));
}

}  // namespace lx
