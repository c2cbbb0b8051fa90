#include "gfht/key_schedule.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <memory>
#include <numeric>

#include "gfht/errors.hpp"

namespace gfht {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

template <std::size_t N>
std::string to_hex(const std::array<Byte, N>& bytes) {
  std::string out;
  out.reserve(2 * N);
  for (Byte b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0xF]);
  }
  return out;
}

struct CtxFree {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

class Sha256Stream {
 public:
  Sha256Stream() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1)
      throw Error("sha256 init failed");
  }
  void update(std::span<const Byte> data) {
    if (EVP_DigestUpdate(ctx_.get(), data.data(), data.size()) != 1)
      throw Error("sha256 update failed");
  }
  Digest finish() {
    Digest d;
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), d.bytes.data(), &len) != 1 || len != 32)
      throw Error("sha256 final failed");
    return d;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, CtxFree> ctx_;
};

}  // namespace

std::string Digest::hex() const { return to_hex(bytes); }
std::string Salt::hex() const { return to_hex(bytes); }

std::span<const Byte> as_bytes(const std::string& s) {
  return {reinterpret_cast<const Byte*>(s.data()), s.size()};
}

Digest sha256(std::span<const Byte> data) {
  Sha256Stream h;
  h.update(data);
  return h.finish();
}

Digest sha256(const std::string& text) { return sha256(as_bytes(text)); }

Digest image_digest(const RgbImage& img) {
  validate_image(img);
  Sha256Stream h;
  h.update(img.red.data);
  h.update(img.green.data);
  h.update(img.blue.data);
  return h.finish();
}

Salt salt_from_digest(const Digest& digest) {
  Salt s;
  std::copy(digest.bytes.end() - 4, digest.bytes.end(), s.bytes.begin());
  return s;
}

Digest derive_seed(std::span<const Byte> passphrase, const Salt& salt) {
  Sha256Stream h;
  h.update(passphrase);
  h.update(salt.bytes);
  return h.finish();
}

Byte KeystreamReader::next_byte() {
  if (pos_ >= block_.size()) {
    Sha256Stream h;
    h.update(seed_.bytes);
    std::array<Byte, 4> ctr = {
        static_cast<Byte>(counter_ >> 24), static_cast<Byte>(counter_ >> 16),
        static_cast<Byte>(counter_ >> 8), static_cast<Byte>(counter_)};
    h.update(ctr);
    block_ = h.finish().bytes;
    ++counter_;
    pos_ = 0;
  }
  return block_[pos_++];
}

void KeystreamReader::fill(std::span<Byte> out) {
  for (Byte& b : out) b = next_byte();
}

std::uint64_t KeystreamReader::uniform(std::uint64_t bound) {
  if (bound == 0) throw ValidationError("uniform bound must be positive");
  if (bound == 1) return 0;
  int width = 1;
  std::uint64_t space = 256;
  while (space < bound) {
    space <<= 8;
    ++width;
  }
  std::uint64_t limit = space - space % bound;
  for (;;) {
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 8) | next_byte();
    if (v < limit) return v % bound;
  }
}

std::vector<Byte> keystream(const Digest& seed, std::size_t count) {
  std::vector<Byte> out(count);
  KeystreamReader reader(seed);
  reader.fill(out);
  return out;
}

Permutation derive_permutation(const Digest& seed, std::size_t n, Byte label) {
  if (n == 0) throw ValidationError("permutation length must be positive");
  Sha256Stream h;
  h.update(seed.bytes);
  h.update(std::span<const Byte>(&label, 1));
  KeystreamReader reader(h.finish());

  Permutation p(n);
  std::iota(p.begin(), p.end(), 0u);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::size_t j = reader.uniform(i + 1);
    std::swap(p[i], p[j]);
  }
  return p;
}

bool is_permutation(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  for (std::uint32_t v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation invert_permutation(const Permutation& p) {
  if (!is_permutation(p)) throw ValidationError("not a permutation");
  Permutation inv(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
  return inv;
}

ByteMatrix build_layer_key(const Permutation& v, const Permutation& h) {
  if (v.empty() || h.empty()) throw ValidationError("empty permutation");
  ByteMatrix key(v.size(), h.size());
  std::vector<Byte> col(h.size());
  for (std::size_t j = 0; j < h.size(); ++j)
    col[j] = static_cast<Byte>((static_cast<std::uint64_t>(h[j]) + 1) & 0xFF);
  for (std::size_t i = 0; i < v.size(); ++i) {
    unsigned row = static_cast<unsigned>((static_cast<std::uint64_t>(v[i]) + 1) & 0xFF);
    for (std::size_t j = 0; j < h.size(); ++j)
      key.at(i, j) = static_cast<Byte>((row * col[j]) & 0xFF);
  }
  return key;
}

Byte rotl8(Byte x, int bits) {
  bits &= 7;
  if (bits == 0) return x;
  return static_cast<Byte>(((x << bits) | (x >> (8 - bits))) & 0xFF);
}

ByteMatrix rotate_layer_key(const ByteMatrix& key, int bits) {
  if (bits != 0 && bits != 3 && bits != 6)
    throw ValidationError("layer key rotation must be 0, 3 or 6 bits");
  ByteMatrix out = key;
  for (Byte& b : out.data) b = rotl8(b, bits);
  return out;
}

const ByteMatrix& KeyMaterial::layer_key(int idx) const {
  switch (idx) {
    case 0: return key_red;
    case 1: return key_green;
    case 2: return key_blue;
    default: throw ValidationError("layer index out of range: " + std::to_string(idx));
  }
}

KeyMaterial derive_key_material(std::span<const Byte> passphrase, const Salt& salt,
                                std::size_t height, std::size_t width, int rounds) {
  if (passphrase.empty()) throw ValidationError("passphrase must not be empty");
  if (height == 0 || width == 0) throw ValidationError("image has zero dimension");
  if (rounds < 1 || rounds > 255) throw ValidationError("rounds must be in [1, 255]");

  Digest seed = derive_seed(passphrase, salt);
  KeyMaterial km;
  km.salt = salt;
  km.rounds = rounds;
  km.v_key = derive_permutation(seed, height, 'V');
  km.h_key = derive_permutation(seed, width, 'H');
  km.key_red = build_layer_key(km.v_key, km.h_key);
  km.key_green = rotate_layer_key(km.key_red, 3);
  km.key_blue = rotate_layer_key(km.key_red, 6);
  return km;
}

}  // namespace gfht
