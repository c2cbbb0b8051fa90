#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gfht/image.hpp"

namespace gfht {

struct Digest {
  std::array<Byte, 32> bytes{};
  std::string hex() const;
  bool operator==(const Digest& other) const = default;
};

struct Salt {
  std::array<Byte, 4> bytes{};
  std::string hex() const;
  bool operator==(const Salt& other) const = default;
};

using Permutation = std::vector<std::uint32_t>;

Digest sha256(std::span<const Byte> data);
Digest sha256(const std::string& text);

// Digest of the plaintext, R then G then B, each row-major.
Digest image_digest(const RgbImage& img);

// The per-image salt is the last four digest bytes.
Salt salt_from_digest(const Digest& digest);

// seed = H(passphrase || salt)
Digest derive_seed(std::span<const Byte> passphrase, const Salt& salt);

// Deterministic byte stream: block i is H(seed || i) with i as a 32-bit
// big-endian counter, blocks concatenated in counter order.
class KeystreamReader {
 public:
  explicit KeystreamReader(const Digest& seed) : seed_(seed) {}

  Byte next_byte();
  void fill(std::span<Byte> out);

  // Uniform draw from [0, bound) by rejection: reads the fewest bytes
  // whose range covers bound, retries past the largest multiple of bound.
  std::uint64_t uniform(std::uint64_t bound);

 private:
  Digest seed_;
  std::array<Byte, 32> block_{};
  std::uint32_t counter_ = 0;
  std::size_t pos_ = 32;
};

std::vector<Byte> keystream(const Digest& seed, std::size_t count);

// Fisher-Yates over [0, n) driven by a sub-stream seeded with
// H(seed || label); label 'V' keys rows, 'H' keys columns.
Permutation derive_permutation(const Digest& seed, std::size_t n, Byte label);

Permutation invert_permutation(const Permutation& p);
bool is_permutation(const Permutation& p);

// Base layer key: entry (i,j) = ((v[i]+1) * (h[j]+1)) mod 256.
ByteMatrix build_layer_key(const Permutation& v, const Permutation& h);

// Circular left rotation of every byte; bits must be 0, 3 or 6.
ByteMatrix rotate_layer_key(const ByteMatrix& key, int bits);

Byte rotl8(Byte x, int bits);

struct KeyMaterial {
  Salt salt;
  int rounds = 0;
  Permutation v_key;  // rows
  Permutation h_key;  // columns
  ByteMatrix key_red;    // rotation 0
  ByteMatrix key_green;  // rotation 3
  ByteMatrix key_blue;   // rotation 6
  const ByteMatrix& layer_key(int idx) const;
};

// Full schedule for an image of the given shape. rounds must be in [1, 255].
KeyMaterial derive_key_material(std::span<const Byte> passphrase, const Salt& salt,
                                std::size_t height, std::size_t width, int rounds);

std::span<const Byte> as_bytes(const std::string& s);

}  // namespace gfht
