#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "gfht/cipher.hpp"
#include "gfht/image.hpp"
#include "gfht/metrics.hpp"
#include "gfht/rmt.hpp"
#include "gfht/spectral.hpp"

namespace gfht {

struct AnalyzeConfig {
  int trials = 100;
  std::size_t window = 600;
  int bins = 10;
  double alpha = 0.01;
  std::size_t segment = 1024;
  double welch_overlap = 0.5;
  double gof_overlap = 0.5;
  int rounds = 3;
  std::uint64_t seed = 1729;
  std::size_t rmt_max_side = 512;
  DofMode dof_mode = DofMode::fixed;
};

struct CorrelationTriple {
  double horizontal = 0.0;
  double vertical = 0.0;
  double diagonal = 0.0;
};

struct AvalancheSummary {
  int trials = 0;
  double npcr_mean = 0.0, npcr_min = 0.0, npcr_max = 0.0;
  double uaci_mean = 0.0, uaci_min = 0.0, uaci_max = 0.0;
  std::array<double, 3> npcr_layer_mean{};
  std::array<double, 3> uaci_layer_mean{};
  std::vector<double> npcr_per_trial;
  std::vector<double> uaci_per_trial;
};

struct RmtLayerStats {
  std::array<double, 3> radial_fraction{};  // at r = 0.2, 0.5, 0.8
  CircularLawStats law;
};

inline constexpr std::array<double, 3> kRadialProbes = {0.2, 0.5, 0.8};

struct MetricsReport {
  int schema_version = 1;
  std::string image_id;
  AnalyzeConfig config;
  std::string salt_hex;
  AvalancheSummary avalanche;
  std::array<CorrelationTriple, 3> corr_plain{};   // per layer
  std::array<CorrelationTriple, 3> corr_cipher{};
  std::array<GofResult, 3> gof_cipher{};  // indexed by Direction
  std::array<GofResult, 3> gof_plain{};
  Flatness psd_cipher;
  Flatness psd_noise;
  double psd_level_delta_db = 0.0;
  std::size_t rmt_side = 0;
  std::array<RmtLayerStats, 3> rmt_plain{};
  std::array<RmtLayerStats, 3> rmt_cipher{};
  double psd2d_cv_plain = 0.0;
  double psd2d_cv_cipher = 0.0;
};

// Everything heavier than a scalar that the battery produced, kept for
// plot emission.
struct AnalysisArtifacts {
  CipherEnvelope envelope;
  RgbImage cipher;
  SpectrumSample welch_cipher;
  SpectrumSample welch_noise;
  std::array<EigenSet, 3> eigs_plain{};
  std::array<EigenSet, 3> eigs_cipher{};
};

struct BatteryResult {
  MetricsReport report;
  AnalysisArtifacts artifacts;
};

// Serializes a full layer as R, G, B scanlines back to back.
std::vector<Byte> image_scan(const RgbImage& img, Direction dir);

// Runs the full measurement battery on one image. Deterministic for a
// fixed (image, passphrase, config).
BatteryResult run_battery(const RgbImage& img, std::span<const Byte> passphrase,
                          const AnalyzeConfig& cfg, const std::string& image_id);

}  // namespace gfht
