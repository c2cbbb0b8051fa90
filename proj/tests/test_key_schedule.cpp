#include <doctest.h>

#include <gfht/errors.hpp>
#include <gfht/key_schedule.hpp>
#include <gfht/metrics.hpp>

#include <array>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "support/test_util.hpp"

using namespace gfht;
using testutil::golden_image_4x4;

TEST_CASE("sha256 matches the published test vectors") {
  CHECK(sha256(std::string{}).hex() ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256(std::string("abc")).hex() ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("image digest hashes R then G then B row-major") {
  RgbImage img = golden_image_4x4();
  CHECK(image_digest(img).hex() ==
        "4dbdc2b2b62cb00749785bc84202236dbc3777d74660611b8e58812f0cfde6c3");

  // cross-check against hashing an explicitly concatenated buffer
  std::vector<Byte> cat;
  for (int c = 0; c < 3; ++c)
    cat.insert(cat.end(), img.layer(c).data.begin(), img.layer(c).data.end());
  CHECK(image_digest(img) == sha256(cat));
}

TEST_CASE("salt is the digest tail") {
  Salt s = salt_from_digest(sha256(std::string{}));
  CHECK(s.hex() == "7852b855");
  CHECK(s.bytes == std::array<Byte, 4>{0x78, 0x52, 0xb8, 0x55});
}

TEST_CASE("seed derivation binds passphrase and salt") {
  Salt zero{};
  CHECK(derive_seed(as_bytes("a"), zero).hex() ==
        "8de8cd75798aab2cec56bcc45f463021a916a8accad171eecdf06718ef09eefb");

  Salt other{};
  other.bytes = {0, 0, 0, 1};
  CHECK(derive_seed(as_bytes("a"), other) != derive_seed(as_bytes("a"), zero));
  CHECK(derive_seed(as_bytes("b"), zero) != derive_seed(as_bytes("a"), zero));
}

TEST_CASE("keystream matches the frozen prefix and is prefix-stable") {
  Digest seed = sha256(std::string("seedcheck"));
  auto first16 = keystream(seed, 16);
  CHECK(testutil::to_hex(first16) == "4481f32c7f4679e9057242afd443b1ab");

  auto first64 = keystream(seed, 64);
  CHECK(std::vector<Byte>(first64.begin(), first64.begin() + 16) == first16);

  // 33 bytes crosses a block boundary
  auto crossing = keystream(seed, 33);
  CHECK(std::vector<Byte>(first64.begin(), first64.begin() + 33) == crossing);

  KeystreamReader reader(seed);
  for (Byte expected : first64) CHECK(reader.next_byte() == expected);

  KeystreamReader reader2(seed);
  std::vector<Byte> filled(64);
  reader2.fill(filled);
  CHECK(filled == first64);
}

TEST_CASE("keystream bytes pass a frequency test") {
  Digest seed = sha256(std::string("frequency"));
  auto bytes = keystream(seed, 100000);
  // chi-square over all 256 byte values; threshold is the 0.99 quantile
  // at 255 degrees of freedom
  double stat = chi_square_statistic(bytes, 256);
  CHECK(stat < 310.45738821990585);
}

TEST_CASE("uniform draws respect the bound and reject bias") {
  Digest seed = sha256(std::string("uniform"));
  KeystreamReader reader(seed);
  CHECK_THROWS_AS(reader.uniform(0), ValidationError);
  CHECK(reader.uniform(1) == 0);

  std::array<std::size_t, 10> counts{};
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    std::uint64_t v = reader.uniform(10);
    REQUIRE(v < 10);
    ++counts[v];
  }
  double expected = draws / 10.0;
  double stat = 0;
  for (std::size_t c : counts) {
    double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  // 0.99 quantile of chi-square with 9 degrees of freedom
  CHECK(stat < 21.665994333461924);

  // bounds above one byte force multi-byte draws
  KeystreamReader wide(seed);
  for (int i = 0; i < 100; ++i) CHECK(wide.uniform(1000) < 1000);
}

TEST_CASE("derive_permutation matches the frozen vectors") {
  Digest seed = sha256(std::string("permcheck"));
  CHECK(derive_permutation(seed, 8, 'V') == Permutation{0, 1, 4, 5, 3, 7, 2, 6});
  CHECK(derive_permutation(seed, 8, 'H') == Permutation{7, 6, 1, 0, 5, 4, 3, 2});
  CHECK(derive_permutation(seed, 1, 'V') == Permutation{0});
}

TEST_CASE("derived permutations are valid and invertible") {
  Digest seed = sha256(std::string("props"));
  for (std::size_t n : {2u, 10u, 257u, 1000u}) {
    Permutation p = derive_permutation(seed, n, 'V');
    REQUIRE(p.size() == n);
    CHECK(is_permutation(p));
    Permutation inv = invert_permutation(p);
    for (std::size_t i = 0; i < n; ++i) CHECK(inv[p[i]] == i);
  }
  CHECK_FALSE(is_permutation(Permutation{0, 0, 1}));
  CHECK_FALSE(is_permutation(Permutation{0, 3}));
  CHECK_THROWS_AS(invert_permutation(Permutation{1, 1}), ValidationError);
}

TEST_CASE("permutations of four elements are equidistributed over seeds") {
  std::map<std::array<std::uint32_t, 4>, int> counts;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    Digest seed = sha256(std::string("equi") + std::to_string(t));
    Permutation p = derive_permutation(seed, 4, 'V');
    counts[{p[0], p[1], p[2], p[3]}]++;
  }
  REQUIRE(counts.size() == 24);
  double expected = trials / 24.0;
  double stat = 0;
  for (const auto& [perm, c] : counts) {
    double d = c - expected;
    stat += d * d / expected;
  }
  // 0.99 quantile of chi-square with 23 degrees of freedom
  CHECK(stat < 41.638398118858476);
}

TEST_CASE("layer key is the rank-one product grid mod 256") {
  ByteMatrix key = build_layer_key({0, 1, 2}, {0, 1});
  REQUIRE(key.height == 3);
  REQUIRE(key.width == 2);
  CHECK(key.data == std::vector<Byte>{1, 2, 2, 4, 3, 6});

  // large indices wrap: (399+1)*(0+1) mod 256 = 144
  ByteMatrix wrapped = build_layer_key({399}, {0});
  CHECK(wrapped.data == std::vector<Byte>{144});
}

TEST_CASE("byte rotation cases and composition") {
  CHECK(rotl8(0x01, 3) == 0x08);
  CHECK(rotl8(0x80, 3) == 0x04);
  CHECK(rotl8(0xff, 3) == 0xff);
  CHECK(rotl8(0xff, 6) == 0xff);
  CHECK(rotl8(0x2a, 0) == 0x2a);
  for (int x = 0; x < 256; ++x) {
    Byte b = static_cast<Byte>(x);
    CHECK(rotl8(rotl8(b, 3), 3) == rotl8(b, 6));
    CHECK(rotl8(rotl8(b, 3), 5) == b);  // total of 8 bits
  }
}

TEST_CASE("layer key rotation accepts exactly the three channel amounts") {
  ByteMatrix key = build_layer_key({0, 1}, {0, 1});
  CHECK(rotate_layer_key(key, 0).data == key.data);
  CHECK_THROWS_AS(rotate_layer_key(key, 1), ValidationError);
  CHECK_THROWS_AS(rotate_layer_key(key, 8), ValidationError);

  ByteMatrix g = rotate_layer_key(key, 3);
  ByteMatrix b = rotate_layer_key(key, 6);
  for (std::size_t k = 0; k < key.data.size(); ++k) {
    CHECK(g.data[k] == rotl8(key.data[k], 3));
    CHECK(b.data[k] == rotl8(key.data[k], 6));
  }
}

TEST_CASE("key material matches the frozen golden schedule") {
  Salt salt;
  salt.bytes = {0x0c, 0xfd, 0xe6, 0xc3};
  KeyMaterial km = derive_key_material(as_bytes("test"), salt, 4, 4, 2);

  CHECK(km.rounds == 2);
  CHECK(km.salt == salt);
  CHECK(km.v_key == Permutation{2, 0, 1, 3});
  CHECK(km.h_key == Permutation{2, 3, 0, 1});
  CHECK(std::vector<Byte>(km.key_red.data.begin(), km.key_red.data.begin() + 4) ==
        std::vector<Byte>{9, 12, 3, 6});

  for (std::size_t k = 0; k < km.key_red.data.size(); ++k) {
    CHECK(km.key_green.data[k] == rotl8(km.key_red.data[k], 3));
    CHECK(km.key_blue.data[k] == rotl8(km.key_red.data[k], 6));
  }
  CHECK(&km.layer_key(0) == &km.key_red);
  CHECK(&km.layer_key(1) == &km.key_green);
  CHECK(&km.layer_key(2) == &km.key_blue);
}

TEST_CASE("key material validation") {
  Salt salt{};
  CHECK_THROWS_AS(derive_key_material({}, salt, 4, 4, 3), ValidationError);
  CHECK_THROWS_AS(derive_key_material(as_bytes("x"), salt, 0, 4, 3), ValidationError);
  CHECK_THROWS_AS(derive_key_material(as_bytes("x"), salt, 4, 0, 3), ValidationError);
  CHECK_THROWS_AS(derive_key_material(as_bytes("x"), salt, 4, 4, 0), ValidationError);
  CHECK_THROWS_AS(derive_key_material(as_bytes("x"), salt, 4, 4, 256), ValidationError);
  CHECK_NOTHROW(derive_key_material(as_bytes("x"), salt, 1, 1, 255));
}

TEST_CASE("row and column permutations differ for the same seed") {
  Digest seed = sha256(std::string("labels"));
  CHECK(derive_permutation(seed, 64, 'V') != derive_permutation(seed, 64, 'H'));
}
