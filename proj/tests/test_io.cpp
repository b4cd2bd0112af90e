#include <doctest.h>

#include <algorithm>
#include <cstdlib>

#include "helpers.hpp"
#include "lx/error.hpp"
#include "lx/io.hpp"
#include "lx/prf.hpp"

using namespace lx;

TEST_SUITE("io") {

TEST_CASE("keystream encode/decode round trip") {
  SplitMix64 rng(41);
  for (const auto& fp : {ff::make_field(5, 3), ff::make_field(3, 6)}) {
    const auto key = prf::random_key(fp, 1, rng);
    SUBCASE("counter mode") {
      const auto ks = prf::keystream_counter(key, 5, 50, fp);
      const auto back = io::decode_keystream(io::encode_keystream(ks));
      CHECK(back.params.describe() == fp.describe());
      CHECK(back.is_counter());
      CHECK(std::get<prf::CounterMode>(back.mode).start == 5);
      CHECK(back.length == 50);
      CHECK(back.bits == ks.bits);
    }
    SUBCASE("geometric mode") {
      const auto g = ff::find_generator(fp, rng);
      const auto ks = prf::keystream_geometric(key, g, 33, fp);
      const auto back = io::decode_keystream(io::encode_keystream(ks));
      CHECK_FALSE(back.is_counter());
      CHECK(std::get<prf::GeometricMode>(back.mode).generator == g);
      CHECK(back.bits == ks.bits);
    }
  }
}

TEST_CASE("keystream decode rejects malformed data") {
  const auto fp = ff::make_field(3, 2);
  const auto key = prf::make_key(1, {fp.one()}, fp);
  auto data = io::encode_keystream(prf::keystream_counter(key, 0, 9, fp));

  SUBCASE("bad magic") {
    auto bad = data;
    bad[0] = 'X';
    CHECK_THROWS_AS(io::decode_keystream(bad), Error);
  }
  SUBCASE("truncation at every prefix length") {
    for (std::size_t cut = 0; cut < data.size(); ++cut) {
      std::vector<std::uint8_t> bad(data.begin(), data.begin() + cut);
      CHECK_THROWS_AS(io::decode_keystream(bad), Error);
    }
  }
  SUBCASE("trailing bytes") {
    auto bad = data;
    bad.push_back(0);
    CHECK_THROWS_AS(io::decode_keystream(bad), Error);
  }
  SUBCASE("nonzero padding bits") {
    auto bad = data;
    bad.back() |= 0x80;  // M = 9, so bits 1..7 of the final byte are padding
    CHECK_THROWS_AS(io::decode_keystream(bad), Error);
  }
  SUBCASE("stream past the field order") {
    auto ks = prf::keystream_counter(key, 0, 9, fp);
    ks.length = 10;
    ks.bits.push_back(0);
    CHECK_THROWS_AS(io::decode_keystream(io::encode_keystream(ks)), Error);
  }
  SUBCASE("non-primitive generator in a geometric header") {
    prf::Keystream ks;
    ks.params = fp;
    ks.mode = prf::GeometricMode{fp.one()};  // order 1, never primitive
    ks.length = 4;
    ks.bits.assign(1, 0);
    CHECK_THROWS_AS(io::decode_keystream(io::encode_keystream(ks)), Error);
  }
}

TEST_CASE("key file round trip") {
  const auto fp = ff::make_field(5, 3);
  SplitMix64 rng(4);
  for (std::uint32_t degree : {1u, 2u, 3u}) {
    const auto key = prf::random_key(fp, degree, rng);
    const auto kf = io::parse_key(io::encode_key(key, fp));
    CHECK(kf.params.describe() == fp.describe());
    CHECK(kf.key == key);
  }
  SUBCASE("d=2 writes two coefficient lines") {
    const auto key = prf::random_key(fp, 2, rng);
    const auto text = io::encode_key(key, fp);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  }
  SUBCASE("malformed key files") {
    CHECK_THROWS_AS(io::parse_key(""), Error);
    CHECK_THROWS_AS(io::parse_key("p=5 r=3 I=1,0,1,1\n"), Error);
    CHECK_THROWS_AS(io::parse_key("p=5 r=3 I=1,0,1,1\nd=2\n1,0,0\n"), Error);
    CHECK_THROWS_AS(io::parse_key("p=5 r=3 I=1,0,1,1\nd=1\n9,0,0\n"), Error);
  }
}

TEST_CASE("file round trip through disk") {
  const auto fp = ff::make_field(7, 3);
  SplitMix64 rng(8);
  const auto key = prf::random_key(fp, 1, rng);
  const auto ks = prf::keystream_counter(key, 0, 64, fp);
  const std::string dir = "/tmp/lx_io_test";
  REQUIRE(std::system(("mkdir -p " + dir).c_str()) == 0);
  io::write_keystream_file(dir + "/s.lxks", ks);
  io::write_key_file(dir + "/k.key", key, fp);
  CHECK(io::read_keystream_file(dir + "/s.lxks").bits == ks.bits);
  CHECK(io::read_key_file(dir + "/k.key").key == key);
  CHECK_THROWS_AS(io::read_keystream_file(dir + "/absent.lxks"), Error);
}

}  // TEST_SUITE
