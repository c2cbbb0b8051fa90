#include "gfht/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gfht/errors.hpp"

namespace gfht {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* kDirectionNames[3] = {"horizontal", "vertical", "diagonal"};
const char* kLayerNames[3] = {"red", "green", "blue"};

ordered_json triple_json(const CorrelationTriple& t) {
  return ordered_json{{"horizontal", t.horizontal},
                      {"vertical", t.vertical},
                      {"diagonal", t.diagonal}};
}

ordered_json gof_json(const GofResult& g) {
  return ordered_json{{"windows", g.windows},
                      {"passed", g.passed},
                      {"pass_rate", g.pass_rate},
                      {"dof", g.dof}};
}

ordered_json rmt_json(const RmtLayerStats& s) {
  ordered_json radial;
  for (std::size_t k = 0; k < kRadialProbes.size(); ++k) {
    std::ostringstream key;
    key << kRadialProbes[k];
    radial[key.str()] = s.radial_fraction[k];
  }
  return ordered_json{{"radial_fraction", radial},
                      {"ks_radial", s.law.ks_radial},
                      {"chi2_angle", s.law.chi2_angle}};
}

template <typename T>
ordered_json per_layer_json(const std::array<T, 3>& layers,
                            ordered_json (*convert)(const T&)) {
  ordered_json out;
  for (std::size_t c = 0; c < 3; ++c) out[kLayerNames[c]] = convert(layers[c]);
  return out;
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  return out;
}

void write_scatter_csv(const std::filesystem::path& path, const Layer& layer,
                       Direction dir) {
  auto pairs = adjacency_pairs(layer, dir);
  // stride-subsample so plots stay light
  const std::size_t stride = std::max<std::size_t>(pairs.size() / 4096, 1);
  std::ofstream out = open_csv(path);
  out << "x,y\n";
  for (std::size_t k = 0; k < pairs.size(); k += stride)
    out << int(pairs[k].first) << "," << int(pairs[k].second) << "\n";
}

void write_spectrum_csv(const std::filesystem::path& path,
                        const SpectrumSample& s) {
  std::ofstream out = open_csv(path);
  out << "freq,power_db\n";
  out << std::setprecision(12);
  for (std::size_t k = 0; k < s.freqs.size(); ++k)
    out << s.freqs[k] << "," << s.power_db[k] << "\n";
}

void write_eigs_csv(const std::filesystem::path& path, const EigenSet& eigs) {
  std::ofstream out = open_csv(path);
  out << "re,im\n";
  out << std::setprecision(12);
  for (const auto& v : eigs.values)
    out << v.real() << "," << v.imag() << "\n";
}

void write_trace_csv(const std::filesystem::path& path, const GofResult& g) {
  std::ofstream out = open_csv(path);
  out << "window,chi2\n";
  out << std::setprecision(12);
  for (std::size_t k = 0; k < g.statistics.size(); ++k)
    out << k << "," << g.statistics[k] << "\n";
}

struct CitedRow {
  const char* name;
  double npcr, uaci;
  double pcc_h, pcc_v, pcc_d, pcc_avg;
};

// published comparison ciphers; values transcribed, never computed here
constexpr CitedRow kCitedRows[] = {
    {"wang [12]", 99.58, 33.56, 0.0010, 0.0022, 0.0150, 0.0061},
    {"wang [13]", 99.65, 33.48, 0.0021, 0.0018, 0.0014, 0.0018},
    {"liu [16]", 99.60, 28.13, 0.0004, 0.0021, 0.0038, 0.0021},
    {"wei [19]", 99.21, 33.28, 0.00062, 0.0052, 0.0069, 0.0042},
};

}  // namespace

std::string report_to_json(const MetricsReport& rep) {
  ordered_json j;
  j["schema_version"] = rep.schema_version;
  j["image_id"] = rep.image_id;
  j["config"] = ordered_json{{"trials", rep.config.trials},
                             {"window", rep.config.window},
                             {"bins", rep.config.bins},
                             {"alpha", rep.config.alpha},
                             {"segment", rep.config.segment},
                             {"welch_overlap", rep.config.welch_overlap},
                             {"gof_overlap", rep.config.gof_overlap},
                             {"rounds", rep.config.rounds},
                             {"seed", rep.config.seed},
                             {"rmt_max_side", rep.config.rmt_max_side},
                             {"dof_mode", rep.config.dof_mode == DofMode::fixed
                                              ? "fixed"
                                              : "dynamic"}};
  j["salt"] = rep.salt_hex;

  const AvalancheSummary& av = rep.avalanche;
  j["avalanche"] = ordered_json{
      {"trials", av.trials},
      {"npcr", ordered_json{{"mean", av.npcr_mean},
                            {"min", av.npcr_min},
                            {"max", av.npcr_max},
                            {"per_layer_mean", av.npcr_layer_mean}}},
      {"uaci", ordered_json{{"mean", av.uaci_mean},
                            {"min", av.uaci_min},
                            {"max", av.uaci_max},
                            {"per_layer_mean", av.uaci_layer_mean}}},
      {"per_trial", ordered_json{{"npcr", av.npcr_per_trial},
                                 {"uaci", av.uaci_per_trial}}}};

  j["correlation"] =
      ordered_json{{"plain", per_layer_json(rep.corr_plain, &triple_json)},
                   {"cipher", per_layer_json(rep.corr_cipher, &triple_json)}};

  ordered_json gof;
  for (int which = 0; which < 2; ++which) {
    const auto& src = which == 0 ? rep.gof_cipher : rep.gof_plain;
    ordered_json side;
    for (std::size_t d = 0; d < 3; ++d)
      side[kDirectionNames[d]] = gof_json(src[d]);
    gof[which == 0 ? "cipher" : "plain"] = side;
  }
  j["gof"] = gof;

  j["psd"] = ordered_json{
      {"segment", rep.config.segment},
      {"overlap", rep.config.welch_overlap},
      {"cipher", ordered_json{{"mean_db", rep.psd_cipher.mean_db},
                              {"ripple_db", rep.psd_cipher.ripple_db}}},
      {"noise", ordered_json{{"mean_db", rep.psd_noise.mean_db},
                             {"ripple_db", rep.psd_noise.ripple_db}}},
      {"level_delta_db", rep.psd_level_delta_db}};

  j["psd_2d"] = ordered_json{{"side", rep.rmt_side},
                             {"cv_plain", rep.psd2d_cv_plain},
                             {"cv_cipher", rep.psd2d_cv_cipher}};

  j["rmt"] = ordered_json{{"side", rep.rmt_side},
                          {"plain", per_layer_json(rep.rmt_plain, &rmt_json)},
                          {"cipher", per_layer_json(rep.rmt_cipher, &rmt_json)}};

  return j.dump(2) + "\n";
}

void write_plot_csvs(const BatteryResult& result, const RgbImage& plain,
                     const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
  const fs::path base(dir);

  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t d = 0; d < 3; ++d) {
      const Direction dir_d = static_cast<Direction>(d);
      const std::string tag =
          std::string(kLayerNames[c]) + "_" + kDirectionNames[d];
      write_scatter_csv(base / ("scatter_plain_" + tag + ".csv"),
                        plain.layer(static_cast<int>(c)), dir_d);
      write_scatter_csv(base / ("scatter_cipher_" + tag + ".csv"),
                        result.artifacts.cipher.layer(static_cast<int>(c)), dir_d);
    }
    write_eigs_csv(base / ("eigs_plain_" + std::string(kLayerNames[c]) + ".csv"),
                   result.artifacts.eigs_plain[c]);
    write_eigs_csv(base / ("eigs_cipher_" + std::string(kLayerNames[c]) + ".csv"),
                   result.artifacts.eigs_cipher[c]);
  }

  write_spectrum_csv(base / "spectrum_cipher.csv", result.artifacts.welch_cipher);
  write_spectrum_csv(base / "spectrum_noise.csv", result.artifacts.welch_noise);

  for (std::size_t d = 0; d < 3; ++d) {
    write_trace_csv(base / ("chi2_cipher_" + std::string(kDirectionNames[d]) + ".csv"),
                    result.report.gof_cipher[d]);
    write_trace_csv(base / ("chi2_plain_" + std::string(kDirectionNames[d]) + ".csv"),
                    result.report.gof_plain[d]);
  }
}

std::string reference_rows_table(const MetricsReport& rep) {
  // measured pcc comes from the cipher blue layer, the grayscale stand-in
  const CorrelationTriple& t = rep.corr_cipher[2];
  const double avg_abs =
      (std::fabs(t.horizontal) + std::fabs(t.vertical) + std::fabs(t.diagonal)) / 3.0;
  const CorrelationTriple& p = rep.corr_plain[2];
  const double plain_avg =
      (std::fabs(p.horizontal) + std::fabs(p.vertical) + std::fabs(p.diagonal)) / 3.0;

  std::ostringstream out;
  out << std::left << std::setw(14) << "algorithm" << std::right
      << std::setw(9) << "npcr%" << std::setw(9) << "uaci%"
      << std::setw(10) << "pcc_h" << std::setw(10) << "pcc_v"
      << std::setw(10) << "pcc_d" << std::setw(10) << "pcc_avg"
      << "  source\n";
  out << std::string(86, '-') << "\n";

  auto row = [&out](const std::string& name, double npcr_v, double uaci_v,
                    double h, double v, double d, double avg,
                    const std::string& source) {
    out << std::left << std::setw(14) << name << std::right << std::fixed
        << std::setprecision(2) << std::setw(9) << npcr_v << std::setw(9)
        << uaci_v << std::setprecision(4) << std::setw(10) << h
        << std::setw(10) << v << std::setw(10) << d << std::setw(10) << avg
        << "  " << source << "\n";
    out.unsetf(std::ios::fixed);
  };

  row("gfht", rep.avalanche.npcr_mean, rep.avalanche.uaci_mean, t.horizontal,
      t.vertical, t.diagonal, avg_abs, "measured (this run)");
  for (const CitedRow& c : kCitedRows)
    row(c.name, c.npcr, c.uaci, c.pcc_h, c.pcc_v, c.pcc_d, c.pcc_avg,
        "cited, not computed");
  out << std::string(86, '-') << "\n";
  out << std::left << std::setw(14) << "plain (ref)" << std::right
      << std::setw(9) << "-" << std::setw(9) << "-" << std::fixed
      << std::setprecision(4) << std::setw(10) << p.horizontal << std::setw(10)
      << p.vertical << std::setw(10) << p.diagonal << std::setw(10) << plain_avg
      << "  measured (this run)\n";
  return out.str();
}

}  // namespace gfht
