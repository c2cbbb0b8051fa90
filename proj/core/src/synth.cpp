#include "gfht/synth.hpp"

#include <cmath>
#include <random>

#include "gfht/errors.hpp"

namespace gfht {

namespace {

Byte clip_byte(double v) {
  if (v <= 0.0) return 0;
  if (v >= 255.0) return 255;
  return static_cast<Byte>(std::lround(v));
}

RgbImage make_gradient(std::size_t h, std::size_t w) {
  RgbImage img(h, w);
  const double denom = std::max<std::size_t>(h + w - 2, 1);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      const double t = 255.0 * static_cast<double>(i + j) / denom;
      img.red.at(i, j) = clip_byte(t);
      img.green.at(i, j) = clip_byte(0.75 * t + 32.0);
      img.blue.at(i, j) = clip_byte(0.5 * t + 64.0);
    }
  }
  return img;
}

RgbImage make_blocks(std::size_t h, std::size_t w, std::uint64_t seed) {
  constexpr std::size_t kTile = 16;
  RgbImage img(h, w);
  for (int c = 0; c < 3; ++c) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(c));
    std::uniform_int_distribution<int> level(0, 255);
    Layer& layer = img.layer(c);
    for (std::size_t bi = 0; bi < h; bi += kTile) {
      for (std::size_t bj = 0; bj < w; bj += kTile) {
        const Byte v = static_cast<Byte>(level(rng));
        for (std::size_t i = bi; i < std::min(bi + kTile, h); ++i)
          for (std::size_t j = bj; j < std::min(bj + kTile, w); ++j)
            layer.at(i, j) = v;
      }
    }
  }
  return img;
}

RgbImage make_xray(std::size_t h, std::size_t w, std::uint64_t seed) {
  // per-channel (amplitude, offset) keeps contrast low, like a radiograph
  constexpr double kAmp[3] = {70.0, 60.0, 55.0};
  constexpr double kOff[3] = {90.0, 95.0, 100.0};
  RgbImage img(h, w);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dither(-1, 1);
  const double ci = (static_cast<double>(h) - 1.0) / 2.0;
  const double cj = (static_cast<double>(w) - 1.0) / 2.0;
  const double si = std::max(static_cast<double>(h) / 4.0, 1.0);
  const double sj = std::max(static_cast<double>(w) / 4.0, 1.0);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      const double di = (static_cast<double>(i) - ci) / si;
      const double dj = (static_cast<double>(j) - cj) / sj;
      const double blob = std::exp(-0.5 * (di * di + dj * dj));
      for (int c = 0; c < 3; ++c) {
        const double v = kOff[c] + kAmp[c] * blob + dither(rng);
        img.layer(c).at(i, j) = clip_byte(v);
      }
    }
  }
  return img;
}

RgbImage make_noise(std::size_t h, std::size_t w, std::uint64_t seed) {
  RgbImage img(h, w);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int c = 0; c < 3; ++c)
    for (Byte& b : img.layer(c).data) b = static_cast<Byte>(byte(rng));
  return img;
}

}  // namespace

Pattern pattern_from_name(const std::string& name) {
  if (name == "gradient") return Pattern::gradient;
  if (name == "blocks") return Pattern::blocks;
  if (name == "xray") return Pattern::xray;
  if (name == "noise") return Pattern::noise;
  throw ValidationError("unknown pattern: " + name);
}

std::string pattern_name(Pattern p) {
  switch (p) {
    case Pattern::gradient: return "gradient";
    case Pattern::blocks: return "blocks";
    case Pattern::xray: return "xray";
    case Pattern::noise: return "noise";
  }
  throw ValidationError("bad pattern");
}

RgbImage make_test_image(Pattern p, std::size_t height, std::size_t width,
                         std::uint64_t seed) {
  if (height == 0 || width == 0) throw ValidationError("image has zero dimension");
  switch (p) {
    case Pattern::gradient: return make_gradient(height, width);
    case Pattern::blocks: return make_blocks(height, width, seed);
    case Pattern::xray: return make_xray(height, width, seed);
    case Pattern::noise: return make_noise(height, width, seed);
  }
  throw ValidationError("bad pattern");
}

}  // namespace gfht
