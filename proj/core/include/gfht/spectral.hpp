#pragma once

#include <complex>
#include <span>
#include <vector>

#include "gfht/image.hpp"

namespace gfht {

// In-place DFT; radix-2 FFT when the length is a power of two, direct
// O(n^2) transform with a precomputed twiddle table otherwise. The inverse
// divides by n.
void dft(std::vector<std::complex<double>>& v, bool inverse = false);

enum class SpectrumMethod { periodogram, welch, wiener_khinchin };

struct SpectrumSample {
  std::vector<double> freqs;     // k / N
  std::vector<double> power;     // linear density
  std::vector<double> power_db;  // 10 log10(power)
  SpectrumMethod method = SpectrumMethod::periodogram;
};

// Biased autocorrelation estimate r[l] = (1/N) sum_n x[n] x[n-l] for
// l = 0..max_lag, on the mean-removed sequence unless remove_mean is off.
std::vector<double> autocorrelation_1d(std::span<const double> x,
                                       std::size_t max_lag,
                                       bool remove_mean = true);

// (1/N) |DFT(x)|^2 per bin.
SpectrumSample periodogram(std::span<const double> x);

// Same spectrum through the transform of the circular autocorrelation;
// agrees with periodogram() to rounding error.
SpectrumSample psd_wiener_khinchin(std::span<const double> x);

enum class SegmentWindow { rectangular, hann };

// Averaged periodogram over segments stepped by segment*(1-overlap).
// Bytes enter as raw values; the DC bin carries their mean.
SpectrumSample welch_psd(std::span<const Byte> x, std::size_t segment,
                         double overlap,
                         SegmentWindow window = SegmentWindow::rectangular);

struct Flatness {
  double mean_db = 0.0;
  double ripple_db = 0.0;  // max - min
};

// Mean and spread of power_db over the non-DC bins.
Flatness psd_flatness(const SpectrumSample& spectrum);

struct RealMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major

  RealMatrix() = default;
  RealMatrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}
  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// (1/(M N)) |2-D DFT|^2.
RealMatrix psd_2d(const Layer& layer);

// Mean and coefficient of variation (sd/mean) of a 2-D power matrix
// excluding the (0,0) bin.
double non_dc_cv(const RealMatrix& power);

}  // namespace gfht
