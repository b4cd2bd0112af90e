#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "lx/ff.hpp"
#include "lx/rng.hpp"

namespace lx::prf {

// Secret key of the degree-d construction: coefficients ordered
// (K_{d-1}, ..., K_1, K_0). Degree 1 holds the single shift K.
struct PrfKey {
  std::uint32_t degree = 0;
  std::vector<ff::FieldElement> coeffs;

  bool operator==(const PrfKey&) const = default;
};

PrfKey make_key(std::uint32_t degree, std::vector<ff::FieldElement> coeffs,
                const ff::FieldParams& fp);

// Uniform key; the leading coefficient is drawn nonzero (for d = 1 that is
// the whole key).
PrfKey random_key(const ff::FieldParams& fp, std::uint32_t degree, SplitMix64& rng);

struct CounterMode {
  std::uint64_t start = 0;
};
struct GeometricMode {
  ff::FieldElement generator;
};

// Immutable once built. Bits are packed little-endian within bytes: bit i of
// the stream lives at bytes[i/8], position i%8.
struct Keystream {
  ff::FieldParams params;
  std::variant<CounterMode, GeometricMode> mode;
  std::uint64_t length = 0;
  std::vector<std::uint8_t> bits;

  bool bit(std::uint64_t i) const { return (bits[i >> 3] >> (i & 7)) & 1; }
  bool is_counter() const { return std::holds_alternative<CounterMode>(mode); }
};

// Polynomial the key defines at x: x^d + K_{d-1} x^{d-1} + ... + K_0.
ff::FieldElement eval_argument(const PrfKey& key, const ff::FieldElement& x,
                               const ff::FieldParams& fp);

// Output map: 0 when the character is 0 or +1, 1 when it is -1.
inline std::uint8_t bit_of_symbol(int legendre) { return legendre == -1 ? 1 : 0; }

std::uint8_t prf_eval(const PrfKey& key, const ff::FieldElement& x, const ff::FieldParams& fp);

// bits[i] = PRF(encode(start + i)); start + M <= p^r, no silent wrap.
Keystream keystream_counter(const PrfKey& key, std::uint64_t start, std::uint64_t length,
                            const ff::FieldParams& fp);

// bits[i-1] = PRF(g^i), i = 1..M, powers by iterated multiplication.
// g must be primitive; 1 <= M <= p^r - 1.
Keystream keystream_geometric(const PrfKey& key, const ff::FieldElement& generator,
                              std::uint64_t length, const ff::FieldParams& fp);

// Keyless reference L_0(m) = character(g^m + 1) under the same bit map,
// defined for 1 <= m <= p^r - 1.
std::uint8_t reference_bit(std::uint64_t m, const ff::FieldElement& generator,
                           const ff::FieldParams& fp);

// Regenerates the stream under `key` and compares bit-for-bit.
bool reproduces(const PrfKey& key, const Keystream& ks);

}  // namespace lx::prf
