#include "gfht/image.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gfht/errors.hpp"

namespace gfht {

const Layer& RgbImage::layer(int idx) const {
  switch (idx) {
    case 0: return red;
    case 1: return green;
    case 2: return blue;
    default: throw ValidationError("layer index out of range: " + std::to_string(idx));
  }
}

Layer& RgbImage::layer(int idx) {
  return const_cast<Layer&>(static_cast<const RgbImage*>(this)->layer(idx));
}

void validate_image(const RgbImage& img) {
  if (img.red.height == 0 || img.red.width == 0)
    throw ValidationError("image has zero dimension");
  if (!img.red.same_shape(img.green) || !img.red.same_shape(img.blue))
    throw ValidationError("channel shapes disagree");
  for (int c = 0; c < 3; ++c) {
    const Layer& l = img.layer(c);
    if (l.data.size() != l.height * l.width)
      throw ValidationError("channel buffer size mismatch");
  }
}

std::vector<Byte> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::vector<Byte> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path);
  return bytes;
}

void write_file(const std::string& path, const std::vector<Byte>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path);
}

namespace {

// Reads one whitespace-delimited token, skipping '#' comments.
std::string next_token(const std::vector<Byte>& bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    if (std::isspace(bytes[pos])) {
      ++pos;
    } else if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
  std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(bytes[pos])) ++pos;
  if (start == pos) throw ValidationError("truncated netpbm header");
  return std::string(bytes.begin() + static_cast<std::ptrdiff_t>(start),
                     bytes.begin() + static_cast<std::ptrdiff_t>(pos));
}

std::size_t parse_dim(const std::string& tok) {
  std::size_t out = 0;
  for (char ch : tok) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw ValidationError("bad netpbm header field: " + tok);
    out = out * 10 + static_cast<std::size_t>(ch - '0');
    if (out > (1u << 20)) throw ValidationError("image dimension too large");
  }
  return out;
}

bool has_png_signature(const std::vector<Byte>& bytes) {
  static const Byte sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() < 8) return false;
  for (int i = 0; i < 8; ++i)
    if (bytes[static_cast<std::size_t>(i)] != sig[i]) return false;
  return true;
}

RgbImage decode_png(const std::string& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str()))
    throw IoError("png read failed: " + std::string(png.message));
  png.format = PNG_FORMAT_RGBA;
  std::vector<Byte> buf(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, buf.data(), 0, nullptr)) {
    std::string msg = png.message;
    png_image_free(&png);
    throw IoError("png decode failed: " + msg);
  }
  RgbImage img(png.height, png.width);
  std::size_t n = img.height() * img.width();
  for (std::size_t k = 0; k < n; ++k) {
    img.red.data[k] = buf[4 * k];
    img.green.data[k] = buf[4 * k + 1];
    img.blue.data[k] = buf[4 * k + 2];
  }
  validate_image(img);
  return img;
}

void encode_png(const RgbImage& img, const std::string& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(img.width());
  png.height = static_cast<png_uint_32>(img.height());
  png.format = PNG_FORMAT_RGB;
  std::size_t n = img.height() * img.width();
  std::vector<Byte> buf(3 * n);
  for (std::size_t k = 0; k < n; ++k) {
    buf[3 * k] = img.red.data[k];
    buf[3 * k + 1] = img.green.data[k];
    buf[3 * k + 2] = img.blue.data[k];
  }
  if (!png_image_write_to_file(&png, path.c_str(), 0, buf.data(), 0, nullptr))
    throw IoError("png write failed: " + std::string(png.message));
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

RgbImage decode_ppm(const std::vector<Byte>& bytes) {
  std::size_t pos = 0;
  std::string magic = next_token(bytes, pos);
  if (magic != "P6" && magic != "P5")
    throw ValidationError("unsupported netpbm magic: " + magic);
  std::size_t width = parse_dim(next_token(bytes, pos));
  std::size_t height = parse_dim(next_token(bytes, pos));
  std::size_t maxval = parse_dim(next_token(bytes, pos));
  if (width == 0 || height == 0) throw ValidationError("image has zero dimension");
  if (maxval != 255) throw ValidationError("only 8-bit netpbm supported");
  if (pos >= bytes.size() || !std::isspace(bytes[pos]))
    throw ValidationError("missing whitespace after netpbm header");
  ++pos;

  std::size_t n = height * width;
  std::size_t channels = (magic == "P6") ? 3 : 1;
  if (bytes.size() - pos < channels * n)
    throw ValidationError("netpbm pixel data truncated");

  RgbImage img(height, width);
  if (magic == "P6") {
    for (std::size_t k = 0; k < n; ++k) {
      img.red.data[k] = bytes[pos + 3 * k];
      img.green.data[k] = bytes[pos + 3 * k + 1];
      img.blue.data[k] = bytes[pos + 3 * k + 2];
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      Byte v = bytes[pos + k];
      img.red.data[k] = v;
      img.green.data[k] = v;
      img.blue.data[k] = v;
    }
  }
  return img;
}

std::vector<Byte> encode_ppm(const RgbImage& img) {
  validate_image(img);
  std::ostringstream header;
  header << "P6\n" << img.width() << " " << img.height() << "\n255\n";
  std::string h = header.str();
  std::size_t n = img.height() * img.width();
  std::vector<Byte> out(h.size() + 3 * n);
  std::copy(h.begin(), h.end(), out.begin());
  std::size_t base = h.size();
  for (std::size_t k = 0; k < n; ++k) {
    out[base + 3 * k] = img.red.data[k];
    out[base + 3 * k + 1] = img.green.data[k];
    out[base + 3 * k + 2] = img.blue.data[k];
  }
  return out;
}

RgbImage load_image(const std::string& path) {
  std::vector<Byte> bytes = read_file(path);
  if (has_png_signature(bytes)) return decode_png(path);
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6'))
    return decode_ppm(bytes);
  throw ValidationError("unrecognized image format: " + path);
}

void save_image(const RgbImage& img, const std::string& path) {
  validate_image(img);
  if (ends_with(path, ".png") || ends_with(path, ".PNG")) {
    encode_png(img, path);
  } else {
    write_file(path, encode_ppm(img));
  }
}

}  // namespace gfht
