#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gfht/image.hpp"
#include "gfht/key_schedule.hpp"

namespace gfht {

// Serialized ciphertext. Layout, all integers big-endian:
//   "GFHT" | version u8 | rounds u8 | height u32 | width u32 | salt[4]
// followed by the three encrypted channels, R then G then B, row-major.
struct CipherEnvelope {
  static constexpr Byte kVersion = 1;
  static constexpr std::size_t kHeaderSize = 18;

  Byte version = kVersion;
  Byte rounds = 0;
  std::uint32_t height = 0;
  std::uint32_t width = 0;
  Salt salt;
  std::vector<Byte> payload;

  std::vector<Byte> to_bytes() const;
  static CipherEnvelope from_bytes(std::span<const Byte> bytes);

  // Payload split back into the three channel matrices.
  RgbImage layers() const;
};

// Row/column shuffle: out(m, p) = in(v[m], h[p]).
Layer crossover(const Layer& in, const Permutation& v, const Permutation& h);
Layer inverse_crossover(const Layer& in, const Permutation& v, const Permutation& h);

// One round: XOR the layer key in, then shuffle.
Layer encrypt_round(const Layer& in, const ByteMatrix& key,
                    const Permutation& v, const Permutation& h);
Layer decrypt_round(const Layer& in, const ByteMatrix& key,
                    const Permutation& v, const Permutation& h);

Layer encrypt_layer(const Layer& in, const ByteMatrix& key, int rounds,
                    const Permutation& v, const Permutation& h);
Layer decrypt_layer(const Layer& in, const ByteMatrix& key, int rounds,
                    const Permutation& v, const Permutation& h);

CipherEnvelope encrypt(const RgbImage& img, const KeyMaterial& km);
RgbImage decrypt(const CipherEnvelope& env, const KeyMaterial& km);

// Salted convenience path: salt comes from the plaintext digest.
CipherEnvelope encrypt(const RgbImage& img, std::span<const Byte> passphrase,
                       int rounds);
RgbImage decrypt(const CipherEnvelope& env, std::span<const Byte> passphrase);

}  // namespace gfht
