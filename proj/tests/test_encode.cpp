#include <doctest.h>

#include <set>
#include <unordered_set>

#include "helpers.hpp"
#include "lx/encode.hpp"
#include "lx/error.hpp"

using namespace lx;

TEST_SUITE("encode") {

TEST_CASE("encode_counter is the base-p digit map") {
  const auto fp = ff::make_field(3, 2);
  CHECK(encode::encode_counter(0, fp) == fp.zero());
  CHECK(encode::encode_counter(5, fp).coeffs == std::vector<std::uint64_t>{2, 1});
  CHECK_THROWS_AS(encode::encode_counter(9, fp), Error);

  SUBCASE("round trip over full periods up to 10^4") {
    for (const auto& f : {ff::make_field(3, 2), ff::make_field(7, 3), ff::make_field(3, 8),
                          ff::make_field(97, 2)}) {
      for (std::uint64_t n = 0; n < f.order; ++n) {
        REQUIRE(f.uint_from_element(encode::encode_counter(n, f)) == n);
      }
    }
  }
}

TEST_CASE("counter_delta follows the carry depth") {
  const auto f32 = ff::make_field(3, 2);
  CHECK(encode::counter_delta(0, f32).coeffs == std::vector<std::uint64_t>{1, 0});
  CHECK(encode::counter_delta(2, f32).coeffs == std::vector<std::uint64_t>{1, 1});
  const auto f33 = ff::make_field(3, 3);
  CHECK(encode::counter_delta(8, f33).coeffs == std::vector<std::uint64_t>{1, 1, 1});
  CHECK_THROWS_AS(encode::counter_delta(8, f32), Error);

  SUBCASE("delta law and delta image, exhaustively") {
    for (const auto& f : {ff::make_field(3, 2), ff::make_field(5, 3), ff::make_field(3, 8),
                          ff::make_field(101, 1), ff::make_field(7, 4)}) {
      CAPTURE(f.order);
      std::set<std::vector<std::uint64_t>> seen;
      for (std::uint64_t n = 0; n + 1 < f.order; ++n) {
        const auto delta = encode::counter_delta(n, f);
        REQUIRE(f.add(encode::encode_counter(n, f), delta) == encode::encode_counter(n + 1, f));
        seen.insert(delta.coeffs);
      }
      // Exactly the all-ones prefixes of every depth below r.
      std::set<std::vector<std::uint64_t>> expected;
      for (std::uint32_t k = 0; k < f.r; ++k) {
        std::vector<std::uint64_t> ones(f.r, 0);
        for (std::uint32_t i = 0; i <= k; ++i) ones[i] = 1;
        expected.insert(ones);
      }
      REQUIRE(seen == expected);
    }
  }
}

TEST_CASE("signature") {
  const auto fp = ff::make_field(3, 2);
  SUBCASE("single-entry window") {
    const auto sig = encode::signature(4, 1, fp);
    CHECK(sig.deltas.size() == 1);
    CHECK(sig.deltas[0] == fp.zero());
  }
  SUBCASE("worked deltas at n=0 and n=2") {
    const auto s0 = encode::signature(0, 3, fp);
    CHECK(fp.uint_from_element(s0.deltas[0]) == 0);
    CHECK(fp.uint_from_element(s0.deltas[1]) == 1);
    CHECK(fp.uint_from_element(s0.deltas[2]) == 2);
    const auto s2 = encode::signature(2, 3, fp);
    CHECK(s2.deltas[1].coeffs == std::vector<std::uint64_t>{1, 1});  // x+1
    CHECK(s2.deltas[2].coeffs == std::vector<std::uint64_t>{2, 1});  // x+2
    CHECK(s0.canonical_key != s2.canonical_key);
  }
  SUBCASE("canonical key packs 2-bit coefficients big-endian") {
    // Deltas 0, 1, 2 over F_9: coefficient stream 0,0,1,0,2,0 at 2 bits each.
    const auto s0 = encode::signature(0, 3, fp);
    CHECK(s0.canonical_key == std::string("\x04\x80", 2));
  }
  SUBCASE("wrapping windows are rejected") {
    CHECK(encode::signature(6, 3, fp).deltas.size() == 3);
    CHECK_THROWS_AS(encode::signature(7, 3, fp), Error);
    CHECK_THROWS_AS(encode::signature(0, 0, fp), Error);
  }
  SUBCASE("deltas are pairwise distinct, zero first") {
    for (const auto& f : {ff::make_field(3, 3), ff::make_field(5, 2)}) {
      for (std::uint64_t n = 0; n + 4 < f.order; ++n) {
        const auto sig = encode::signature(n, 5, f);
        REQUIRE(sig.deltas[0] == f.zero());
        std::set<std::uint64_t> views;
        for (const auto& d : sig.deltas) views.insert(f.uint_from_element(d));
        REQUIRE(views.size() == sig.deltas.size());
      }
    }
  }
  SUBCASE("deltas increase for borrow-free windows") {
    // Starts divisible by p^ceil(log_p U) have all low digits zero, so the
    // coefficient-wise subtraction never borrows and delta i reads back as
    // the integer i.
    const auto f = ff::make_field(3, 4);
    for (std::uint64_t n = 0; n + 4 < f.order; n += 9) {
      const auto sig = encode::signature(n, 5, f);
      for (std::size_t i = 0; i < sig.deltas.size(); ++i) {
        REQUIRE(f.uint_from_element(sig.deltas[i]) == i);
      }
    }
  }
}

TEST_CASE("signature periodicity holds for windows without deep carries") {
  // sig(n) = sig(n + p^L) whenever neither window's carry event cascades
  // past digit L; a deep cascade genuinely changes the signature.
  for (const auto& f : {ff::make_field(3, 4), ff::make_field(5, 3)}) {
    const std::uint32_t window = 4;
    std::uint32_t level = 0;
    std::uint64_t block = 1;
    while (block < window) {
      block *= f.p;
      ++level;
    }
    const auto cascades_past = [&](std::uint64_t n) {
      for (std::uint64_t m = n + 1; m < n + window; ++m) {
        std::uint64_t v = m, depth = 0;
        while (v % f.p == 0) {
          v /= f.p;
          ++depth;
        }
        if (depth > level) return true;
      }
      return false;
    };
    for (std::uint64_t n = 0; n + block + window - 1 < f.order; ++n) {
      if (cascades_past(n) || cascades_past(n + block)) continue;
      REQUIRE(encode::signature(n, window, f).canonical_key ==
              encode::signature(n + block, window, f).canonical_key);
    }
  }
}

TEST_CASE("signature_class_count") {
  SUBCASE("window of one has a single class") {
    CHECK(encode::signature_class_count(1, ff::make_field(3, 3)) == 1);
    CHECK(encode::signature_class_count(1, ff::make_field(7, 2)) == 1);
  }
  SUBCASE("worked bounds from small fields") {
    const auto f33 = ff::make_field(3, 3);
    const auto count = encode::signature_class_count(4, f33);
    // Oracle: enumerate all starts by hand.
    std::unordered_set<std::string> keys;
    for (std::uint64_t n = 0; n + 3 < f33.order; ++n) {
      keys.insert(encode::signature(n, 4, f33).canonical_key);
    }
    CHECK(count == keys.size());
    CHECK(count <= 9);  // p^ceil(log_3 4)

    const auto f52 = ff::make_field(5, 2);
    CHECK(encode::signature_class_count(5, f52) <= 5);
  }
  SUBCASE("residue formula agrees with enumeration") {
    for (const auto& f : {ff::make_field(3, 9), ff::make_field(5, 5), ff::make_field(7, 4),
                          ff::make_field(11, 3)}) {
      CAPTURE(f.p);
      for (std::uint32_t window : {2u, 3u, 4u, 5u, 9u, 16u, 27u}) {
        REQUIRE(encode::detail::class_count_residue(window, f) ==
                encode::detail::class_count_enumerated(window, f));
      }
    }
  }
  SUBCASE("r = 1 always has one class") {
    const auto f = ff::make_field(101, 1);
    CHECK(encode::signature_class_count(7, f) == 1);
    CHECK(encode::detail::class_count_residue(7, f) == 1);
  }
  SUBCASE("range errors") {
    const auto f = ff::make_field(3, 2);
    CHECK_THROWS_AS(encode::signature_class_count(0, f), Error);
    CHECK_THROWS_AS(encode::signature_class_count(9, f), Error);
  }
}

}  // TEST_SUITE
