#include "gfht/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gfht/errors.hpp"

namespace gfht {

namespace {

constexpr std::uint64_t kNoiseSeedTweak = 0x9e3779b97f4a7c15ull;

AvalancheSummary run_avalanche(const RgbImage& img, std::span<const Byte> passphrase,
                               const AnalyzeConfig& cfg) {
  if (cfg.trials < 1) throw ValidationError("trials must be positive");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::size_t> row(0, img.height() - 1);
  std::uniform_int_distribution<std::size_t> col(0, img.width() - 1);
  std::uniform_int_distribution<int> chan(0, 2);

  AvalancheSummary sum;
  sum.trials = cfg.trials;
  sum.npcr_min = 100.0;
  sum.uaci_min = 100.0;
  for (int t = 0; t < cfg.trials; ++t) {
    // redraw until the target byte is nonzero; nullifying a zero byte
    // would be a no-op edit
    std::size_t r = 0, c = 0;
    int ch = 0;
    bool found = false;
    for (int attempt = 0; attempt < 10000; ++attempt) {
      r = row(rng);
      c = col(rng);
      ch = chan(rng);
      if (img.layer(ch).at(r, c) != 0) {
        found = true;
        break;
      }
    }
    if (!found)
      throw ValidationError("could not find a nonzero byte to nullify");

    const DiffStats d = avalanche_once(img, passphrase, cfg.rounds, r, c, ch).stats;
    sum.npcr_per_trial.push_back(d.npcr);
    sum.uaci_per_trial.push_back(d.uaci);
    sum.npcr_mean += d.npcr;
    sum.uaci_mean += d.uaci;
    sum.npcr_min = std::min(sum.npcr_min, d.npcr);
    sum.npcr_max = std::max(sum.npcr_max, d.npcr);
    sum.uaci_min = std::min(sum.uaci_min, d.uaci);
    sum.uaci_max = std::max(sum.uaci_max, d.uaci);
    for (std::size_t l = 0; l < 3; ++l) {
      sum.npcr_layer_mean[l] += d.npcr_per_layer[l];
      sum.uaci_layer_mean[l] += d.uaci_per_layer[l];
    }
  }
  const double n = static_cast<double>(cfg.trials);
  sum.npcr_mean /= n;
  sum.uaci_mean /= n;
  for (std::size_t l = 0; l < 3; ++l) {
    sum.npcr_layer_mean[l] /= n;
    sum.uaci_layer_mean[l] /= n;
  }
  return sum;
}

CorrelationTriple correlation_triple(const Layer& layer) {
  CorrelationTriple t;
  t.horizontal = adjacency_correlation(layer, Direction::horizontal);
  t.vertical = adjacency_correlation(layer, Direction::vertical);
  t.diagonal = adjacency_correlation(layer, Direction::diagonal);
  return t;
}

RmtLayerStats rmt_layer_stats(const EigenSet& eigs) {
  RmtLayerStats s;
  for (std::size_t k = 0; k < kRadialProbes.size(); ++k)
    s.radial_fraction[k] = radial_fraction(eigs, kRadialProbes[k]);
  s.law = circular_law_distance(eigs);
  return s;
}

}  // namespace

std::vector<Byte> image_scan(const RgbImage& img, Direction dir) {
  std::vector<Byte> out;
  out.reserve(3 * img.height() * img.width());
  for (int c = 0; c < 3; ++c) {
    std::vector<Byte> line = scanline(img.layer(c), dir);
    out.insert(out.end(), line.begin(), line.end());
  }
  return out;
}

BatteryResult run_battery(const RgbImage& img, std::span<const Byte> passphrase,
                          const AnalyzeConfig& cfg, const std::string& image_id) {
  validate_image(img);
  const std::size_t stream_len = 3 * img.height() * img.width();
  if (stream_len < cfg.window)
    throw ValidationError("image too small for the goodness-of-fit window");
  if (stream_len < cfg.segment)
    throw ValidationError("image too small for the spectral segment");
  const std::size_t side = std::min({cfg.rmt_max_side, img.height(), img.width()});
  if (side < 32)
    throw ValidationError("image too small for spectral-distribution analysis (needs 32x32)");

  BatteryResult out;
  MetricsReport& rep = out.report;
  AnalysisArtifacts& art = out.artifacts;
  rep.image_id = image_id;
  rep.config = cfg;

  art.envelope = encrypt(img, passphrase, cfg.rounds);
  art.cipher = art.envelope.layers();
  rep.salt_hex = art.envelope.salt.hex();

  rep.avalanche = run_avalanche(img, passphrase, cfg);

  for (int c = 0; c < 3; ++c) {
    rep.corr_plain[static_cast<std::size_t>(c)] = correlation_triple(img.layer(c));
    rep.corr_cipher[static_cast<std::size_t>(c)] = correlation_triple(art.cipher.layer(c));
  }

  GofConfig gof_cfg;
  gof_cfg.window = cfg.window;
  gof_cfg.overlap = cfg.gof_overlap;
  gof_cfg.bins = cfg.bins;
  gof_cfg.alpha = cfg.alpha;
  gof_cfg.dof_mode = cfg.dof_mode;
  for (int d = 0; d < 3; ++d) {
    const Direction dir = static_cast<Direction>(d);
    rep.gof_cipher[static_cast<std::size_t>(d)] =
        sliding_window_gof(image_scan(art.cipher, dir), gof_cfg);
    rep.gof_plain[static_cast<std::size_t>(d)] =
        sliding_window_gof(image_scan(img, dir), gof_cfg);
  }

  art.welch_cipher = welch_psd(art.envelope.payload, cfg.segment, cfg.welch_overlap);
  std::vector<Byte> noise(art.envelope.payload.size());
  std::mt19937_64 noise_rng(cfg.seed ^ kNoiseSeedTweak);
  std::uniform_int_distribution<int> byte_dist(0, 255);
  for (Byte& b : noise) b = static_cast<Byte>(byte_dist(noise_rng));
  art.welch_noise = welch_psd(noise, cfg.segment, cfg.welch_overlap);
  rep.psd_cipher = psd_flatness(art.welch_cipher);
  rep.psd_noise = psd_flatness(art.welch_noise);
  rep.psd_level_delta_db = std::fabs(rep.psd_cipher.mean_db - rep.psd_noise.mean_db);

  rep.rmt_side = side;
  for (int c = 0; c < 3; ++c) {
    const std::size_t ci = static_cast<std::size_t>(c);
    art.eigs_plain[ci] =
        eigenvalues(standardize_matrix(central_crop(img.layer(c), side)));
    art.eigs_cipher[ci] =
        eigenvalues(standardize_matrix(central_crop(art.cipher.layer(c), side)));
    rep.rmt_plain[ci] = rmt_layer_stats(art.eigs_plain[ci]);
    rep.rmt_cipher[ci] = rmt_layer_stats(art.eigs_cipher[ci]);
  }

  rep.psd2d_cv_plain = non_dc_cv(psd_2d(central_crop(img.blue, side)));
  rep.psd2d_cv_cipher = non_dc_cv(psd_2d(central_crop(art.cipher.blue, side)));

  return out;
}

}  // namespace gfht
