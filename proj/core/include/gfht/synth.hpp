#pragma once

#include <cstdint>
#include <string>

#include "gfht/image.hpp"

namespace gfht {

// Deterministic test patterns for metric campaigns:
//   gradient - smooth diagonal ramp, strongly correlated neighbours
//   blocks   - 16x16 flat tiles at random levels
//   xray     - low-contrast centered blob with mild dither
//   noise    - independent uniform bytes
enum class Pattern { gradient, blocks, xray, noise };

Pattern pattern_from_name(const std::string& name);
std::string pattern_name(Pattern p);

RgbImage make_test_image(Pattern p, std::size_t height, std::size_t width,
                         std::uint64_t seed);

}  // namespace gfht
