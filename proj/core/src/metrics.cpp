#include "gfht/metrics.hpp"

#include <cmath>
#include <cstdlib>

#include "gfht/cipher.hpp"
#include "gfht/errors.hpp"

namespace gfht {

namespace {

void check_same_shape(const Layer& a, const Layer& b) {
  if (!a.same_shape(b)) throw ValidationError("layer shapes disagree");
  if (a.size() == 0) throw ValidationError("empty layer");
}

// Neighbour offsets per direction: (row step, col step).
std::pair<std::size_t, std::size_t> dir_offsets(Direction dir) {
  switch (dir) {
    case Direction::horizontal: return {0, 1};
    case Direction::vertical: return {1, 0};
    case Direction::diagonal: return {1, 1};
  }
  throw ValidationError("bad direction");
}

}  // namespace

double npcr(const Layer& a, const Layer& b) {
  check_same_shape(a, b);
  std::size_t diff = 0;
  for (std::size_t k = 0; k < a.data.size(); ++k)
    diff += (a.data[k] != b.data[k]);
  return 100.0 * static_cast<double>(diff) / static_cast<double>(a.size());
}

double uaci(const Layer& a, const Layer& b) {
  check_same_shape(a, b);
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < a.data.size(); ++k)
    total += static_cast<std::uint64_t>(std::abs(int(a.data[k]) - int(b.data[k])));
  return 100.0 * static_cast<double>(total) /
         (255.0 * static_cast<double>(a.size()));
}

DiffStats diff_stats(const RgbImage& a, const RgbImage& b) {
  DiffStats s;
  for (int c = 0; c < 3; ++c) {
    s.npcr_per_layer[static_cast<std::size_t>(c)] = npcr(a.layer(c), b.layer(c));
    s.uaci_per_layer[static_cast<std::size_t>(c)] = uaci(a.layer(c), b.layer(c));
  }
  for (int c = 0; c < 3; ++c) {
    s.npcr += s.npcr_per_layer[static_cast<std::size_t>(c)] / 3.0;
    s.uaci += s.uaci_per_layer[static_cast<std::size_t>(c)] / 3.0;
  }
  return s;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("sample sizes disagree");
  if (x.size() < 2) throw ValidationError("need at least two samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = x[k] - mx, dy = y[k] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw NumericError("correlation undefined: zero variance");
  return sxy / std::sqrt(sxx * syy);
}

std::vector<std::pair<Byte, Byte>> adjacency_pairs(const Layer& layer, Direction dir) {
  auto [di, dj] = dir_offsets(dir);
  if (layer.height < di + 1 || layer.width < dj + 1)
    throw ValidationError("layer too small for this direction");
  std::vector<std::pair<Byte, Byte>> pairs;
  pairs.reserve((layer.height - di) * (layer.width - dj));
  for (std::size_t i = 0; i + di < layer.height; ++i)
    for (std::size_t j = 0; j + dj < layer.width; ++j)
      pairs.emplace_back(layer.at(i, j), layer.at(i + di, j + dj));
  return pairs;
}

double adjacency_correlation(const Layer& layer, Direction dir) {
  auto pairs = adjacency_pairs(layer, dir);
  std::vector<double> x(pairs.size()), y(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    x[k] = pairs[k].first;
    y[k] = pairs[k].second;
  }
  return pearson(x, y);
}

std::vector<Byte> scanline(const Layer& layer, Direction dir) {
  if (layer.size() == 0) throw ValidationError("empty layer");
  const std::size_t M = layer.height, N = layer.width;
  std::vector<Byte> out;
  out.reserve(M * N);
  switch (dir) {
    case Direction::horizontal:
      out = layer.data;
      break;
    case Direction::vertical:
      for (std::size_t j = 0; j < N; ++j)
        for (std::size_t i = 0; i < M; ++i) out.push_back(layer.at(i, j));
      break;
    case Direction::diagonal:
      // anti-diagonals d = i+j, alternating up-right / down-left
      for (std::size_t d = 0; d <= M + N - 2; ++d) {
        std::size_t lo = (d >= N) ? d - N + 1 : 0;  // smallest valid i
        std::size_t hi = std::min(d, M - 1);        // largest valid i
        if (d % 2 == 0) {
          for (std::size_t i = hi + 1; i-- > lo;) out.push_back(layer.at(i, d - i));
        } else {
          for (std::size_t i = lo; i <= hi; ++i) out.push_back(layer.at(i, d - i));
        }
      }
      break;
  }
  return out;
}

double chi_square_statistic(std::span<const Byte> window, int bins) {
  if (window.empty()) throw ValidationError("empty window");
  if (bins < 2 || bins > 256) throw ValidationError("bins must be in [2, 256]");

  // bin b covers [floor(256 b / bins), floor(256 (b+1) / bins))
  std::array<int, 256> bin_of{};
  for (int b = 0; b < bins; ++b) {
    int lo = (256 * b) / bins;
    int hi = (256 * (b + 1)) / bins;
    for (int v = lo; v < hi; ++v) bin_of[static_cast<std::size_t>(v)] = b;
  }

  std::vector<double> observed(static_cast<std::size_t>(bins), 0.0);
  for (Byte v : window) observed[static_cast<std::size_t>(bin_of[v])] += 1.0;

  const double expected = static_cast<double>(window.size()) / bins;
  double chi2 = 0.0;
  for (double o : observed) {
    const double d = o - expected;
    chi2 += d * d / expected;
  }
  return chi2;
}

double regularized_gamma_p(double a, double x) {
  if (a <= 0.0) throw ValidationError("gamma shape must be positive");
  if (x < 0.0) throw ValidationError("gamma argument must be nonnegative");
  if (x == 0.0) return 0.0;

  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    // series: P(a,x) = x^a e^-x / Gamma(a) * sum x^n / (a)_{n+1}
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int n = 0; n < 500; ++n) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-16)
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    throw NumericError("incomplete gamma series did not converge");
  }
  // Lentz continued fraction for Q(a,x), then P = 1 - Q
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16)
      return 1.0 - h * std::exp(-x + a * std::log(x) - lg);
  }
  throw NumericError("incomplete gamma continued fraction did not converge");
}

double chi_square_cdf(double x, double dof) {
  if (dof <= 0.0) throw ValidationError("degrees of freedom must be positive");
  if (x < 0.0) return 0.0;
  return regularized_gamma_p(dof / 2.0, x / 2.0);
}

GofResult sliding_window_gof(std::span<const Byte> data, const GofConfig& cfg) {
  if (cfg.window == 0) throw ValidationError("window must be positive");
  if (data.size() < cfg.window) throw ValidationError("data shorter than one window");
  if (cfg.overlap <= 0.0 || cfg.overlap >= 1.0)
    throw ValidationError("overlap must be in (0, 1)");
  if (cfg.alpha <= 0.0 || cfg.alpha >= 1.0)
    throw ValidationError("alpha must be in (0, 1)");

  std::size_t step = static_cast<std::size_t>(
      std::llround(static_cast<double>(cfg.window) * (1.0 - cfg.overlap)));
  if (step == 0) step = 1;

  GofResult res;
  res.dof = (cfg.dof_mode == DofMode::fixed)
                ? static_cast<double>(cfg.bins - 1)
                : std::sqrt(static_cast<double>(cfg.window)) + 1.0;

  for (std::size_t start = 0; start + cfg.window <= data.size(); start += step) {
    const double chi2 =
        chi_square_statistic(data.subspan(start, cfg.window), cfg.bins);
    res.statistics.push_back(chi2);
    const double p = 1.0 - chi_square_cdf(chi2, res.dof);
    ++res.windows;
    if (p >= cfg.alpha) ++res.passed;
  }
  res.pass_rate = static_cast<double>(res.passed) / static_cast<double>(res.windows);
  return res;
}

AvalancheSample avalanche_once(const RgbImage& img, std::span<const Byte> passphrase,
                               int rounds, std::size_t row, std::size_t col,
                               int channel) {
  validate_image(img);
  if (row >= img.height() || col >= img.width())
    throw ValidationError("pixel position out of range");
  if (img.layer(channel).at(row, col) == 0)
    throw ValidationError("selected byte is already zero; nullification is a no-op");

  // each encryption salts from its own digest, so the one-byte edit also
  // reseeds the whole key schedule
  RgbImage modified = img;
  modified.layer(channel).at(row, col) = 0;

  AvalancheSample s;
  s.row = row;
  s.col = col;
  s.channel = channel;
  s.stats = diff_stats(encrypt(img, passphrase, rounds).layers(),
                       encrypt(modified, passphrase, rounds).layers());
  return s;
}

}  // namespace gfht
