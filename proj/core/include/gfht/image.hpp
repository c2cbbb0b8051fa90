#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace gfht {

using Byte = std::uint8_t;

// Dense row-major byte matrix; doubles as one channel of an image.
struct ByteMatrix {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<Byte> data;

  ByteMatrix() = default;
  ByteMatrix(std::size_t h, std::size_t w, Byte fill = 0)
      : height(h), width(w), data(h * w, fill) {}

  Byte& at(std::size_t i, std::size_t j) { return data[i * width + j]; }
  Byte at(std::size_t i, std::size_t j) const { return data[i * width + j]; }
  std::size_t size() const { return data.size(); }

  bool same_shape(const ByteMatrix& other) const {
    return height == other.height && width == other.width;
  }
  bool operator==(const ByteMatrix& other) const = default;
};

using Layer = ByteMatrix;

struct RgbImage {
  Layer red, green, blue;

  RgbImage() = default;
  RgbImage(std::size_t h, std::size_t w)
      : red(h, w), green(h, w), blue(h, w) {}

  std::size_t height() const { return red.height; }
  std::size_t width() const { return red.width; }
  const Layer& layer(int idx) const;
  Layer& layer(int idx);
  bool operator==(const RgbImage& other) const = default;
};

// Throws ValidationError unless all three layers share a non-empty shape.
void validate_image(const RgbImage& img);

// File I/O. Format is picked by content when loading (PNG signature or
// PPM/PGM magic) and by extension when saving (".png" vs anything else,
// which is written as binary PPM). PGM input is replicated across the
// three channels. Only 8-bit depth is supported.
RgbImage load_image(const std::string& path);
void save_image(const RgbImage& img, const std::string& path);

RgbImage decode_ppm(const std::vector<Byte>& bytes);
std::vector<Byte> encode_ppm(const RgbImage& img);

std::vector<Byte> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<Byte>& bytes);

}  // namespace gfht
