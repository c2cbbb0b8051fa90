#include "gfht/spectral.hpp"

#include <cmath>
#include <numbers>

#include "gfht/errors.hpp"

namespace gfht {

namespace {

using cd = std::complex<double>;

constexpr double kDbFloor = -400.0;  // stand-in for log of a zero bin

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<cd>& v, bool inverse) {
  const std::size_t n = v.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi /
                       static_cast<double>(len);
    const cd wlen = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      cd w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cd u = v[i + k];
        const cd t = v[i + k + len / 2] * w;
        v[i + k] = u + t;
        v[i + k + len / 2] = u - t;
        w *= wlen;
      }
    }
  }
}

void dft_direct(std::vector<cd>& v, bool inverse) {
  const std::size_t n = v.size();
  std::vector<cd> tw(n);
  const double sign = inverse ? 2.0 : -2.0;
  for (std::size_t l = 0; l < n; ++l)
    tw[l] = std::polar(1.0, sign * std::numbers::pi * static_cast<double>(l) /
                                static_cast<double>(n));
  std::vector<cd> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cd acc(0.0, 0.0);
    std::size_t idx = 0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += v[j] * tw[idx];
      idx += k;
      if (idx >= n) idx -= n;
    }
    out[k] = acc;
  }
  v = std::move(out);
}

double to_db(double linear) {
  return linear > 0.0 ? 10.0 * std::log10(linear) : kDbFloor;
}

SpectrumSample sample_from_power(std::vector<double> power, SpectrumMethod m) {
  SpectrumSample s;
  s.method = m;
  const std::size_t n = power.size();
  s.freqs.resize(n);
  s.power_db.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    s.freqs[k] = static_cast<double>(k) / static_cast<double>(n);
    s.power_db[k] = to_db(power[k]);
  }
  s.power = std::move(power);
  return s;
}

std::vector<double> periodogram_power(std::span<const double> x) {
  std::vector<cd> v(x.begin(), x.end());
  dft(v);
  std::vector<double> power(v.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    power[k] = std::norm(v[k]) / static_cast<double>(v.size());
  return power;
}

}  // namespace

void dft(std::vector<cd>& v, bool inverse) {
  if (v.empty()) throw ValidationError("empty transform input");
  if (v.size() == 1) return;
  if (is_pow2(v.size()))
    fft_radix2(v, inverse);
  else
    dft_direct(v, inverse);
  if (inverse) {
    const double inv = 1.0 / static_cast<double>(v.size());
    for (cd& z : v) z *= inv;
  }
}

std::vector<double> autocorrelation_1d(std::span<const double> x,
                                       std::size_t max_lag, bool remove_mean) {
  if (x.empty()) throw ValidationError("empty sequence");
  if (max_lag >= x.size())
    throw ValidationError("max_lag must be below the sequence length");

  const std::size_t n = x.size();
  std::vector<double> y(x.begin(), x.end());
  if (remove_mean) {
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(n);
    for (double& v : y) v -= mean;
  }
  std::vector<double> r(max_lag + 1, 0.0);
  for (std::size_t l = 0; l <= max_lag; ++l) {
    double acc = 0.0;
    for (std::size_t k = l; k < n; ++k) acc += y[k] * y[k - l];
    r[l] = acc / static_cast<double>(n);
  }
  return r;
}

SpectrumSample periodogram(std::span<const double> x) {
  if (x.empty()) throw ValidationError("empty sequence");
  return sample_from_power(periodogram_power(x), SpectrumMethod::periodogram);
}

SpectrumSample psd_wiener_khinchin(std::span<const double> x) {
  if (x.empty()) throw ValidationError("empty sequence");
  const std::size_t n = x.size();

  // circular autocorrelation, so the transform pair is exact at finite n
  std::vector<double> r(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += x[k] * x[(k + n - l) % n];
    r[l] = acc / static_cast<double>(n);
  }
  std::vector<cd> v(r.begin(), r.end());
  dft(v);
  std::vector<double> power(n);
  for (std::size_t k = 0; k < n; ++k) power[k] = std::max(v[k].real(), 0.0);
  return sample_from_power(std::move(power), SpectrumMethod::wiener_khinchin);
}

SpectrumSample welch_psd(std::span<const Byte> x, std::size_t segment,
                         double overlap, SegmentWindow window) {
  if (segment == 0) throw ValidationError("segment must be positive");
  if (x.size() < segment) throw ValidationError("input shorter than one segment");
  if (overlap < 0.0 || overlap >= 1.0)
    throw ValidationError("overlap must be in [0, 1)");

  std::size_t step = static_cast<std::size_t>(
      std::llround(static_cast<double>(segment) * (1.0 - overlap)));
  if (step == 0) step = 1;

  std::vector<double> taper(segment, 1.0);
  double norm = 1.0;
  if (window == SegmentWindow::hann) {
    double power_sum = 0.0;
    for (std::size_t k = 0; k < segment; ++k) {
      taper[k] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi *
                                      static_cast<double>(k) /
                                      static_cast<double>(segment));
      power_sum += taper[k] * taper[k];
    }
    norm = power_sum / static_cast<double>(segment);
  }

  std::vector<double> acc(segment, 0.0);
  std::vector<double> seg(segment);
  std::size_t count = 0;
  for (std::size_t start = 0; start + segment <= x.size(); start += step) {
    for (std::size_t k = 0; k < segment; ++k)
      seg[k] = static_cast<double>(x[start + k]) * taper[k];
    std::vector<double> p = periodogram_power(seg);
    for (std::size_t k = 0; k < segment; ++k) acc[k] += p[k];
    ++count;
  }
  for (double& v : acc) v /= static_cast<double>(count) * norm;
  return sample_from_power(std::move(acc), SpectrumMethod::welch);
}

Flatness psd_flatness(const SpectrumSample& spectrum) {
  if (spectrum.power_db.size() < 3)
    throw ValidationError("need at least two non-DC bins");
  Flatness f;
  double lo = spectrum.power_db[1], hi = spectrum.power_db[1];
  for (std::size_t k = 1; k < spectrum.power_db.size(); ++k) {
    const double v = spectrum.power_db[k];
    f.mean_db += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  f.mean_db /= static_cast<double>(spectrum.power_db.size() - 1);
  f.ripple_db = hi - lo;
  return f;
}

RealMatrix psd_2d(const Layer& layer) {
  if (layer.size() == 0) throw ValidationError("empty layer");
  const std::size_t M = layer.height, N = layer.width;

  std::vector<std::vector<cd>> rows(M);
  for (std::size_t i = 0; i < M; ++i) {
    rows[i].resize(N);
    for (std::size_t j = 0; j < N; ++j) rows[i][j] = cd(layer.at(i, j), 0.0);
    dft(rows[i]);
  }
  RealMatrix power(M, N);
  std::vector<cd> col(M);
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t i = 0; i < M; ++i) col[i] = rows[i][j];
    dft(col);
    for (std::size_t i = 0; i < M; ++i)
      power.at(i, j) = std::norm(col[i]) / static_cast<double>(M * N);
  }
  return power;
}

double non_dc_cv(const RealMatrix& power) {
  if (power.data.size() < 2) throw ValidationError("need at least one non-DC bin");
  const std::size_t n = power.data.size() - 1;
  double mean = 0.0;
  for (std::size_t k = 1; k < power.data.size(); ++k) mean += power.data[k];
  mean /= static_cast<double>(n);
  if (mean == 0.0) throw NumericError("degenerate spectrum: zero non-DC mean");
  double var = 0.0;
  for (std::size_t k = 1; k < power.data.size(); ++k) {
    const double d = power.data[k] - mean;
    var += d * d;
  }
  var /= static_cast<double>(n);
  return std::sqrt(var) / mean;
}

}  // namespace gfht
