#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lx/encode.hpp"
#include "lx/prf.hpp"

namespace lx::attack {

// Collision-search core shared by both attacks: packed U-bit windows mapped
// to the indices they were observed at (counter values in the passive
// attack, 1-based exponents in the active one).
struct WindowTable {
  std::uint32_t window_bits = 0;
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> entries;
  std::optional<encode::DifferentialSignature> signature;  // passive buckets only
  std::uint64_t population = 0;                            // total stored indices
};

struct AttackReport {
  std::string mode;  // "passive" | "active"
  std::optional<prf::PrfKey> recovered_key;
  std::uint64_t guesses = 0;             // candidate samples drawn
  std::uint64_t collisions_checked = 0;  // table hits inspected
  std::uint64_t false_collisions = 0;    // hits rejected by verification
  double elapsed_seconds = 0.0;

  // Run configuration echo, so reports are self-describing.
  std::uint32_t window_bits = 0;
  std::uint64_t max_guesses = 0;
  std::uint64_t seed = 0;
  std::uint32_t workers = 1;
  std::uint64_t table_windows = 0;       // windows stored in the queried table
  std::uint64_t bucket_population = 0;   // passive: chosen bucket size
  std::string kernel;
};

struct Options {
  std::uint64_t seed = 0;
  std::uint64_t max_guesses = 0;  // 0 = default (50*p^r passive, 50*p^r/M active)
  std::uint32_t workers = 1;      // 0 = hardware concurrency
  bool use_complement = true;     // active attack only
};

// min(M, ceil(log2 p^r) + 6): 2^U >= 64*p^r unless the stream is shorter.
std::uint32_t default_window_bits(const ff::FieldParams& fp, std::uint64_t length);

std::uint64_t packed_window(const prf::Keystream& ks, std::uint64_t start, std::uint32_t window);

// Partitions all M-U+1 windows of a counter-mode stream by differential
// signature; map keys are canonical signature keys (sorted, so the lowest
// key breaks population ties deterministically).
std::map<std::string, WindowTable> bucket_windows(const prf::Keystream& ks, std::uint32_t window);

// One table over all windows of a geometric stream, keyed by packed bits,
// values the 1-based exponent of the window's first bit.
WindowTable build_target_table(const prf::Keystream& ks, std::uint32_t window);

// Differential-signature bucketing attack on a counter-mode stream from an
// unknown degree-1 key. Every table hit is verified against the full stream.
AttackReport passive_recover(const prf::Keystream& ks, std::uint32_t window, const Options& opt);

// Geometric table-collision attack on a chosen-query stream; samples
// reference windows and their bitwise complements.
AttackReport active_recover(const prf::Keystream& ks, std::uint32_t window, const Options& opt);

std::string report_text(const AttackReport& rep, const prf::Keystream& ks);
std::string report_json(const AttackReport& rep, const prf::Keystream& ks);

}  // namespace lx::attack
