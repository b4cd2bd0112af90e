#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lx/ff.hpp"
#include "lx/prf.hpp"

namespace lx::io {

// Keystream container format, all multi-byte integers big-endian:
//   magic "LXKS" | version 0x01 | u16 field-description length | description
//   | mode byte (0 counter, 1 geometric)
//   | counter: u64 start / geometric: r x u64 generator coefficients
//   | u64 M | ceil(M/8) packed bit bytes (little-endian within each byte)
// The key is never serialized with a stream.
std::vector<std::uint8_t> encode_keystream(const prf::Keystream& ks);
prf::Keystream decode_keystream(const std::vector<std::uint8_t>& data);

void write_keystream_file(const std::string& path, const prf::Keystream& ks);
prf::Keystream read_keystream_file(const std::string& path);

// Key file (text): field description line, "d=<degree>", then one
// comma-joined coefficient line per key element, K_{d-1} first.
std::string encode_key(const prf::PrfKey& key, const ff::FieldParams& fp);
void write_key_file(const std::string& path, const prf::PrfKey& key, const ff::FieldParams& fp);

struct KeyFile {
  ff::FieldParams params;
  prf::PrfKey key;
};
KeyFile parse_key(const std::string& text);
KeyFile read_key_file(const std::string& path);

std::string element_to_string(const ff::FieldElement& a);
ff::FieldElement element_from_string(const std::string& s, const ff::FieldParams& fp);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& data);

}  // namespace lx::io
