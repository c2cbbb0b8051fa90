#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gfht/image.hpp"

namespace gfht {

enum class Direction { horizontal, vertical, diagonal };

// NPCR: percentage of positions whose bytes differ.
double npcr(const Layer& a, const Layer& b);

// UACI: mean absolute byte difference as a percentage of 255.
double uaci(const Layer& a, const Layer& b);

struct DiffStats {
  std::array<double, 3> npcr_per_layer{};
  std::array<double, 3> uaci_per_layer{};
  double npcr = 0.0;  // mean over layers
  double uaci = 0.0;
};

DiffStats diff_stats(const RgbImage& a, const RgbImage& b);

// Sample Pearson correlation. Throws NumericError if either input has
// zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

// Correlation of each byte with its neighbour one step in the given
// direction (right, down, or down-right).
double adjacency_correlation(const Layer& layer, Direction dir);

// The neighbour pairs themselves, for scatter plots.
std::vector<std::pair<Byte, Byte>> adjacency_pairs(const Layer& layer, Direction dir);

// Serializes a layer into a 1-D scan: horizontal is row-major, vertical
// column-major, diagonal walks anti-diagonals in the boustrophedon order
// used by JPEG zigzag (up-right on even i+j, down-left on odd).
std::vector<Byte> scanline(const Layer& layer, Direction dir);

// Pearson chi-square statistic of byte frequencies against the uniform
// law, using `bins` equal ranges of [0, 256).
double chi_square_statistic(std::span<const Byte> window, int bins);

// CDF of the chi-square distribution with dof degrees of freedom.
double chi_square_cdf(double x, double dof);

// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);

enum class DofMode {
  fixed,    // bins - 1
  dynamic,  // sqrt(window size) + 1
};

struct GofConfig {
  std::size_t window = 600;
  double overlap = 0.5;
  int bins = 10;
  double alpha = 0.01;
  DofMode dof_mode = DofMode::fixed;
};

struct GofResult {
  std::size_t windows = 0;
  std::size_t passed = 0;
  double pass_rate = 0.0;  // fraction of windows not rejected
  double dof = 0.0;
  std::vector<double> statistics;  // chi-square per window, in scan order
};

// Slides a window of cfg.window bytes with step round(window * (1 -
// overlap)) and tests each against uniformity at level cfg.alpha.
GofResult sliding_window_gof(std::span<const Byte> data, const GofConfig& cfg);

struct AvalancheSample {
  std::size_t row = 0, col = 0;
  int channel = 0;
  DiffStats stats;
};

// Encrypts img, zeroes one channel byte, encrypts the edited copy, and
// differences the two ciphertexts. Each encryption salts from its own
// plaintext digest, so the one-byte edit also reseeds the key schedule.
// The target byte must be nonzero or the edit would be a no-op.
AvalancheSample avalanche_once(const RgbImage& img, std::span<const Byte> passphrase,
                               int rounds, std::size_t row, std::size_t col,
                               int channel);

}  // namespace gfht
