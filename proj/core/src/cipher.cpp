#include "gfht/cipher.hpp"

#include <cstring>

#include "gfht/errors.hpp"

namespace gfht {

namespace {

constexpr Byte kMagic[4] = {'G', 'F', 'H', 'T'};
constexpr std::uint64_t kMaxPixels = 1ull << 28;

void put_u32(std::vector<Byte>& out, std::uint32_t v) {
  out.push_back(static_cast<Byte>(v >> 24));
  out.push_back(static_cast<Byte>(v >> 16));
  out.push_back(static_cast<Byte>(v >> 8));
  out.push_back(static_cast<Byte>(v));
}

std::uint32_t get_u32(std::span<const Byte> bytes, std::size_t pos) {
  return (static_cast<std::uint32_t>(bytes[pos]) << 24) |
         (static_cast<std::uint32_t>(bytes[pos + 1]) << 16) |
         (static_cast<std::uint32_t>(bytes[pos + 2]) << 8) |
         static_cast<std::uint32_t>(bytes[pos + 3]);
}

void check_keys(const Layer& in, const Permutation& v, const Permutation& h) {
  if (v.size() != in.height || h.size() != in.width)
    throw ValidationError("permutation length does not match layer shape");
}

}  // namespace

std::vector<Byte> CipherEnvelope::to_bytes() const {
  std::vector<Byte> out;
  out.reserve(kHeaderSize + payload.size());
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  out.push_back(version);
  out.push_back(rounds);
  put_u32(out, height);
  put_u32(out, width);
  out.insert(out.end(), salt.bytes.begin(), salt.bytes.end());
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

CipherEnvelope CipherEnvelope::from_bytes(std::span<const Byte> bytes) {
  if (bytes.size() < kHeaderSize) throw ValidationError("envelope too short");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw ValidationError("bad envelope magic");
  CipherEnvelope env;
  env.version = bytes[4];
  if (env.version != kVersion)
    throw ValidationError("unsupported envelope version: " + std::to_string(env.version));
  env.rounds = bytes[5];
  if (env.rounds == 0) throw ValidationError("envelope rounds must be positive");
  env.height = get_u32(bytes, 6);
  env.width = get_u32(bytes, 10);
  if (env.height == 0 || env.width == 0)
    throw ValidationError("envelope has zero dimension");
  std::uint64_t pixels = static_cast<std::uint64_t>(env.height) * env.width;
  if (pixels > kMaxPixels) throw ValidationError("envelope dimensions too large");
  std::copy(bytes.begin() + 14, bytes.begin() + 18, env.salt.bytes.begin());
  if (bytes.size() - kHeaderSize != 3 * pixels)
    throw ValidationError("envelope payload length mismatch");
  env.payload.assign(bytes.begin() + kHeaderSize, bytes.end());
  return env;
}

RgbImage CipherEnvelope::layers() const {
  std::size_t n = static_cast<std::size_t>(height) * width;
  if (payload.size() != 3 * n) throw ValidationError("envelope payload length mismatch");
  RgbImage img(height, width);
  std::copy_n(payload.begin(), n, img.red.data.begin());
  std::copy_n(payload.begin() + static_cast<std::ptrdiff_t>(n), n, img.green.data.begin());
  std::copy_n(payload.begin() + static_cast<std::ptrdiff_t>(2 * n), n, img.blue.data.begin());
  return img;
}

Layer crossover(const Layer& in, const Permutation& v, const Permutation& h) {
  check_keys(in, v, h);
  Layer out(in.height, in.width);
  for (std::size_t m = 0; m < in.height; ++m) {
    const Byte* src = &in.data[static_cast<std::size_t>(v[m]) * in.width];
    Byte* dst = &out.data[m * in.width];
    for (std::size_t p = 0; p < in.width; ++p) dst[p] = src[h[p]];
  }
  return out;
}

Layer inverse_crossover(const Layer& in, const Permutation& v, const Permutation& h) {
  return crossover(in, invert_permutation(v), invert_permutation(h));
}

Layer encrypt_round(const Layer& in, const ByteMatrix& key,
                    const Permutation& v, const Permutation& h) {
  check_keys(in, v, h);
  if (!in.same_shape(key)) throw ValidationError("layer key shape mismatch");
  Layer out(in.height, in.width);
  for (std::size_t m = 0; m < in.height; ++m) {
    const std::size_t row = static_cast<std::size_t>(v[m]) * in.width;
    const Byte* src = &in.data[row];
    const Byte* ks = &key.data[row];
    Byte* dst = &out.data[m * in.width];
    for (std::size_t p = 0; p < in.width; ++p) {
      std::size_t col = h[p];
      dst[p] = static_cast<Byte>(src[col] ^ ks[col]);
    }
  }
  return out;
}

Layer decrypt_round(const Layer& in, const ByteMatrix& key,
                    const Permutation& v, const Permutation& h) {
  Layer shuffled = inverse_crossover(in, v, h);
  for (std::size_t k = 0; k < shuffled.data.size(); ++k)
    shuffled.data[k] = static_cast<Byte>(shuffled.data[k] ^ key.data[k]);
  return shuffled;
}

Layer encrypt_layer(const Layer& in, const ByteMatrix& key, int rounds,
                    const Permutation& v, const Permutation& h) {
  if (rounds < 1) throw ValidationError("rounds must be positive");
  Layer out = in;
  for (int r = 0; r < rounds; ++r) out = encrypt_round(out, key, v, h);
  return out;
}

Layer decrypt_layer(const Layer& in, const ByteMatrix& key, int rounds,
                    const Permutation& v, const Permutation& h) {
  if (rounds < 1) throw ValidationError("rounds must be positive");
  Layer out = in;
  for (int r = 0; r < rounds; ++r) out = decrypt_round(out, key, v, h);
  return out;
}

CipherEnvelope encrypt(const RgbImage& img, const KeyMaterial& km) {
  validate_image(img);
  if (km.v_key.size() != img.height() || km.h_key.size() != img.width())
    throw ValidationError("key material shape does not match image");

  CipherEnvelope env;
  env.rounds = static_cast<Byte>(km.rounds);
  env.height = static_cast<std::uint32_t>(img.height());
  env.width = static_cast<std::uint32_t>(img.width());
  env.salt = km.salt;
  env.payload.reserve(3 * img.height() * img.width());
  for (int c = 0; c < 3; ++c) {
    Layer enc = encrypt_layer(img.layer(c), km.layer_key(c), km.rounds,
                              km.v_key, km.h_key);
    env.payload.insert(env.payload.end(), enc.data.begin(), enc.data.end());
  }
  return env;
}

RgbImage decrypt(const CipherEnvelope& env, const KeyMaterial& km) {
  RgbImage enc = env.layers();
  if (km.v_key.size() != enc.height() || km.h_key.size() != enc.width())
    throw ValidationError("key material shape does not match envelope");
  RgbImage img(enc.height(), enc.width());
  for (int c = 0; c < 3; ++c)
    img.layer(c) = decrypt_layer(enc.layer(c), km.layer_key(c), env.rounds,
                                 km.v_key, km.h_key);
  return img;
}

CipherEnvelope encrypt(const RgbImage& img, std::span<const Byte> passphrase,
                       int rounds) {
  validate_image(img);
  Salt salt = salt_from_digest(image_digest(img));
  KeyMaterial km =
      derive_key_material(passphrase, salt, img.height(), img.width(), rounds);
  return encrypt(img, km);
}

RgbImage decrypt(const CipherEnvelope& env, std::span<const Byte> passphrase) {
  KeyMaterial km = derive_key_material(passphrase, env.salt, env.height,
                                       env.width, env.rounds);
  return decrypt(env, km);
}

}  // namespace gfht
