#pragma once

#include <cstdint>
#include <vector>

#include "lx/prf.hpp"

namespace lx::stats {

// Sliding-window pattern counts; result[v] is the count of the l-bit pattern
// whose bit t (in stream order) sits at bit position t of v. l <= min(M, 24).
std::vector<std::uint64_t> pattern_census(const prf::Keystream& ks, std::uint32_t l);

struct WeilReport {
  std::uint32_t l = 0;
  std::uint64_t order = 0;
  std::uint64_t windows = 0;
  double expected = 0.0;       // p^r / 2^l
  double max_deviation = 0.0;  // max over patterns of |count - expected|
  double constant = 0.0;       // tolerance constant in force (= l)
  double bound = 0.0;          // constant * sqrt(p^r)
  bool pass = false;
};

// Pattern-frequency deviation check over one full period (counter mode,
// start 0, M = p^r required).
WeilReport weil_check(const prf::Keystream& ks, std::uint32_t l);

// Minimal period of the wrapped counter keystream, probed over
// periods * p^r bits (periods >= 2). This is the one sanctioned wrap site:
// indices reduce mod p^r explicitly. Result always divides p^r.
std::uint64_t period_probe(const prf::PrfKey& key, const ff::FieldParams& fp,
                           std::uint32_t periods);

}  // namespace lx::stats
