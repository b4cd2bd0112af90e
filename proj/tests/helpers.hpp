#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "lx/ff.hpp"

namespace lxtest {

struct LadderEntry {
  std::uint64_t p;
  std::uint32_t r;
};

// Small fields used throughout: orders 9, 25, 27, 49, 121, 125, 343, 729.
inline const std::vector<LadderEntry>& ladder() {
  static const std::vector<LadderEntry> l = {
      {3, 2}, {5, 2}, {3, 3}, {7, 2}, {11, 2}, {5, 3}, {7, 3}, {3, 6}};
  return l;
}

inline std::vector<lx::ff::FieldParams> ladder_fields() {
  std::vector<lx::ff::FieldParams> out;
  for (const auto& e : ladder()) out.push_back(lx::ff::make_field(e.p, e.r));
  return out;
}

// Independent oracle: the set of nonzero squares, found by squaring every
// nonzero element with mul (never via legendre).
inline std::set<std::uint64_t> square_set(const lx::ff::FieldParams& fp) {
  std::set<std::uint64_t> squares;
  for (std::uint64_t v = 1; v < fp.order; ++v) {
    const auto b = fp.element_from_uint(v);
    squares.insert(fp.uint_from_element(fp.mul(b, b)));
  }
  return squares;
}

}  // namespace lxtest
