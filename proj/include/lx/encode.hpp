#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lx/ff.hpp"

namespace lx::encode {

// Cumulative input differences across a window, deltas[0] always zero.
// canonical_key packs every coefficient big-endian at ceil(log2 p) bits,
// so equal keys mean equal delta vectors.
struct DifferentialSignature {
  std::vector<ff::FieldElement> deltas;
  std::string canonical_key;

  bool operator==(const DifferentialSignature& o) const {
    return canonical_key == o.canonical_key;
  }
};

// Digit-wise injection of n into the field; refuses n >= p^r rather than
// wrapping (callers wanting wraparound reduce explicitly).
ff::FieldElement encode_counter(std::uint64_t n, const ff::FieldParams& fp);

// encode_counter(n+1) - encode_counter(n): the all-ones polynomial through
// degree v_p(n+1). Valid for n < p^r - 1.
ff::FieldElement counter_delta(std::uint64_t n, const ff::FieldParams& fp);

// Requires a wrap-free window: n + U - 1 < p^r.
DifferentialSignature signature(std::uint64_t n, std::uint32_t window, const ff::FieldParams& fp);

std::string canonical_key_of(const std::vector<ff::FieldElement>& deltas,
                             const ff::FieldParams& fp);

// Exact number of distinct signatures over all valid window starts.
// Enumerates when p^r <= 10^6, otherwise uses the residue/carry-depth
// classification (the two agree; tested against each other).
std::uint64_t signature_class_count(std::uint32_t window, const ff::FieldParams& fp);

namespace detail {
std::uint64_t class_count_enumerated(std::uint32_t window, const ff::FieldParams& fp);
std::uint64_t class_count_residue(std::uint32_t window, const ff::FieldParams& fp);
}  // namespace detail

}  // namespace lx::encode
