#include <doctest.h>

#include <map>

#include "helpers.hpp"
#include "lx/attack.hpp"
#include "lx/error.hpp"

using namespace lx;

namespace {

prf::PrfKey key1(const ff::FieldParams& fp, std::uint64_t v) {
  return prf::make_key(1, {fp.element_from_uint(v)}, fp);
}

ff::FieldElement gen_of(const ff::FieldParams& fp, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return ff::find_generator(fp, rng);
}

}  // namespace

TEST_SUITE("attack_active") {

TEST_CASE("build_target_table maps windows to 1-based exponents") {
  const auto fp = ff::make_field(7, 2);
  const auto g = gen_of(fp, 1);
  const auto key = key1(fp, 19);
  const auto ks = prf::keystream_geometric(key, g, 48, fp);

  SUBCASE("single window at U = M") {
    const auto t = attack::build_target_table(ks, 48);
    CHECK(t.entries.size() == 1);
    CHECK(t.population == 1);
    CHECK(t.entries.begin()->second == std::vector<std::uint64_t>{1});
  }
  SUBCASE("all windows stored; duplicates share a key") {
    const auto t = attack::build_target_table(ks, 12);
    CHECK(t.population == 48 - 12 + 1);
    CHECK(t.entries.size() <= t.population);
    for (const auto& [packed, indices] : t.entries) {
      for (std::uint64_t i : indices) {
        CHECK(attack::packed_window(ks, i - 1, 12) == packed);
      }
    }
  }
  SUBCASE("windows match a regeneration from the known key") {
    const auto t = attack::build_target_table(ks, 12);
    const auto regen = prf::keystream_geometric(key, g, 48, fp);
    for (const auto& [packed, indices] : t.entries) {
      for (std::uint64_t i : indices) {
        REQUIRE(attack::packed_window(regen, i - 1, 12) == packed);
      }
    }
  }
  SUBCASE("mode and window validation") {
    CHECK_THROWS_AS(attack::build_target_table(ks, 49), Error);
    const auto ctr = prf::keystream_counter(key, 0, 20, fp);
    CHECK_THROWS_AS(attack::build_target_table(ctr, 4), Error);
  }
}

TEST_CASE("active_recover extracts a planted key end to end") {
  const auto fp = ff::make_field(7, 3);
  const auto g = gen_of(fp, 2);
  SplitMix64 keyrng(44);
  for (int trial = 0; trial < 5; ++trial) {
    const auto key = prf::random_key(fp, 1, keyrng);
    const auto ks = prf::keystream_geometric(key, g, 64, fp);
    attack::Options opt;
    opt.seed = 600 + trial;
    const auto rep = attack::active_recover(ks, 16, opt);
    REQUIRE(rep.recovered_key.has_value());
    CHECK(*rep.recovered_key == key);
    CHECK(prf::reproduces(*rep.recovered_key, ks));
    CHECK(rep.mode == "active");
  }
}

TEST_CASE("K = one is the zero-shift case") {
  const auto fp = ff::make_field(7, 3);
  const auto g = gen_of(fp, 3);
  const auto key = key1(fp, 1);
  const auto ks = prf::keystream_geometric(key, g, 64, fp);
  attack::Options opt;
  opt.seed = 5;
  const auto rep = attack::active_recover(ks, 16, opt);
  REQUIRE(rep.recovered_key.has_value());
  CHECK(*rep.recovered_key == key);
}

TEST_CASE("mean guesses track p^r / M") {
  const auto fp = ff::make_field(7, 3);
  const auto g = gen_of(fp, 4);
  SplitMix64 keyrng(45);
  double total = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    const auto key = prf::random_key(fp, 1, keyrng);
    const auto ks = prf::keystream_geometric(key, g, 64, fp);
    attack::Options opt;
    opt.seed = 90000 + trial;
    const auto rep = attack::active_recover(ks, attack::default_window_bits(fp, 64), opt);
    REQUIRE(rep.recovered_key.has_value());
    REQUIRE(*rep.recovered_key == key);
    total += static_cast<double>(rep.guesses);
  }
  const double mean = total / trials;
  const double predicted = 343.0 / 64.0;
  CHECK(mean <= 4.0 * predicted);
  CHECK(mean >= predicted / 4.0);
}

TEST_CASE("shift identity on a small field") {
  const auto fp = ff::make_field(7, 2);
  const auto g = gen_of(fp, 6);
  const std::uint64_t group = fp.order - 1;
  std::map<std::uint64_t, std::uint64_t> dlog;
  ff::FieldElement acc = fp.one();
  for (std::uint64_t i = 0; i < group; ++i) {
    dlog[fp.uint_from_element(acc)] = i;
    acc = fp.mul(acc, g);
  }
  SplitMix64 keyrng(46);
  for (int trial = 0; trial < 20; ++trial) {
    const auto kv = 1 + keyrng.below(group);
    const auto k = fp.element_from_uint(kv);
    const auto target = prf::keystream_geometric(key1(fp, kv), g, group, fp);
    const std::uint64_t j = dlog.at(fp.uint_from_element(fp.inv(k)));
    const bool flip = fp.legendre(k) == -1;
    std::uint64_t zero_i = dlog.at(fp.uint_from_element(fp.neg(k)));
    if (zero_i == 0) zero_i = group;
    for (std::uint64_t i = 1; i <= group; ++i) {
      if (i == zero_i) continue;
      const std::uint64_t m = (i + j - 1) % group + 1;
      if (m == fp.half_order) continue;
      REQUIRE(target.bit(i - 1) == (prf::reference_bit(m, g, fp) ^ flip));
    }
  }
}

TEST_CASE("complement lookups are required for non-residue keys") {
  const auto fp = ff::make_field(3, 3);
  const auto g = gen_of(fp, 7);
  // Plant a key with legendre(K) = -1 whose stream identifies it uniquely.
  ff::FieldElement k = fp.zero();
  for (std::uint64_t v = 1; v < fp.order; ++v) {
    if (fp.legendre(fp.element_from_uint(v)) == -1) {
      k = fp.element_from_uint(v);
      break;
    }
  }
  REQUIRE(fp.legendre(k) == -1);
  const auto key = prf::make_key(1, {k}, fp);
  const auto ks = prf::keystream_geometric(key, g, 26, fp);
  for (std::uint64_t v = 1; v < fp.order; ++v) {
    if (fp.element_from_uint(v) == k) continue;
    REQUIRE_FALSE(prf::reproduces(key1(fp, v), ks));  // stream pins the key
  }
  const std::uint32_t window = attack::default_window_bits(fp, 26);

  attack::Options no_comp;
  no_comp.seed = 13;
  no_comp.use_complement = false;
  no_comp.max_guesses = 50 * fp.order;
  const auto fail_rep = attack::active_recover(ks, window, no_comp);
  CHECK_FALSE(fail_rep.recovered_key.has_value());
  CHECK(fail_rep.guesses == no_comp.max_guesses);

  attack::Options with_comp = no_comp;
  with_comp.use_complement = true;
  const auto ok_rep = attack::active_recover(ks, window, with_comp);
  REQUIRE(ok_rep.recovered_key.has_value());
  CHECK(*ok_rep.recovered_key == key);
}

TEST_CASE("active beats passive at matched field and stream length") {
  const auto fp = ff::make_field(7, 3);
  const auto g = gen_of(fp, 8);
  const std::uint32_t window = attack::default_window_bits(fp, 64);
  SplitMix64 keyrng(47);
  double active_total = 0, passive_total = 0;
  const int trials = 50;
  for (int trial = 0; trial < trials; ++trial) {
    const auto key = prf::random_key(fp, 1, keyrng);
    attack::Options opt;
    opt.seed = 70000 + trial;
    const auto geo = prf::keystream_geometric(key, g, 64, fp);
    active_total += static_cast<double>(attack::active_recover(geo, window, opt).guesses);
    const auto ctr = prf::keystream_counter(key, 0, 64, fp);
    passive_total += static_cast<double>(attack::passive_recover(ctr, window, opt).guesses);
  }
  CHECK(active_total / trials <= passive_total / trials);
}

TEST_CASE("worker count does not change the outcome") {
  const auto fp = ff::make_field(3, 6);
  const auto g = gen_of(fp, 9);
  const auto key = key1(fp, 500);
  const auto ks = prf::keystream_geometric(key, g, 64, fp);
  const std::uint32_t window = attack::default_window_bits(fp, 64);
  attack::Options a;
  a.seed = 21;
  a.workers = 1;
  attack::Options b = a;
  b.workers = 3;
  const auto ra = attack::active_recover(ks, window, a);
  const auto rb = attack::active_recover(ks, window, b);
  REQUIRE(ra.recovered_key.has_value());
  CHECK(*ra.recovered_key == *rb.recovered_key);
  CHECK(ra.guesses == rb.guesses);
  CHECK(ra.collisions_checked == rb.collisions_checked);
}

}  // TEST_SUITE
