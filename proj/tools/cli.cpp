#include "cli.hpp"

#include <CLI11.hpp>

#include "gfht/analysis.hpp"
#include "gfht/cipher.hpp"
#include "gfht/errors.hpp"
#include "gfht/image.hpp"
#include "gfht/report.hpp"
#include "gfht/synth.hpp"

namespace gfht::cli {

namespace {

struct EncryptOpts {
  std::string in, out, passphrase;
  int rounds = 3;
};

struct DecryptOpts {
  std::string in, out, passphrase;
};

struct AnalyzeOpts {
  std::string in, passphrase, report_path, plots_dir;
  AnalyzeConfig cfg;
  bool print_table = false;
};

struct GenOpts {
  std::string pattern = "noise", out;
  std::size_t height = 256, width = 256;
  std::uint64_t seed = 1;
};

int do_encrypt(const EncryptOpts& o, std::ostream& out) {
  RgbImage img = load_image(o.in);
  CipherEnvelope env = encrypt(img, as_bytes(o.passphrase), o.rounds);
  write_file(o.out, env.to_bytes());
  out << "salt " << env.salt.hex() << "\n";
  return kOk;
}

int do_decrypt(const DecryptOpts& o, std::ostream& out) {
  CipherEnvelope env = CipherEnvelope::from_bytes(read_file(o.in));
  RgbImage img = decrypt(env, as_bytes(o.passphrase));
  save_image(img, o.out);
  out << "wrote " << o.out << "\n";
  return kOk;
}

int do_analyze(const AnalyzeOpts& o, std::ostream& out) {
  RgbImage img = load_image(o.in);
  BatteryResult result = run_battery(img, as_bytes(o.passphrase), o.cfg, o.in);
  const std::string json = report_to_json(result.report);
  if (o.report_path.empty()) {
    out << json;
  } else {
    write_file(o.report_path,
               std::vector<Byte>(json.begin(), json.end()));
    out << "report " << o.report_path << "\n";
  }
  if (!o.plots_dir.empty()) {
    write_plot_csvs(result, img, o.plots_dir);
    out << "plots " << o.plots_dir << "\n";
  }
  if (o.print_table) out << reference_rows_table(result.report);
  return kOk;
}

int do_gen(const GenOpts& o, std::ostream& out) {
  RgbImage img =
      make_test_image(pattern_from_name(o.pattern), o.height, o.width, o.seed);
  save_image(img, o.out);
  out << "wrote " << o.out << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gfht: genetic image cipher and randomness analysis toolkit"};
  app.require_subcommand(1);
  app.footer(
      "exit codes: 0 ok, 2 usage or validation, 3 file i/o, 4 numeric failure");

  EncryptOpts enc;
  CLI::App* enc_cmd = app.add_subcommand("encrypt", "encrypt an image file");
  enc_cmd->add_option("--in", enc.in, "input image (png/ppm/pgm)")->required();
  enc_cmd->add_option("--out", enc.out, "output envelope path")->required();
  enc_cmd->add_option("--passphrase", enc.passphrase, "secret passphrase")->required();
  enc_cmd->add_option("--rounds", enc.rounds, "encryption rounds")
      ->default_val(3)
      ->check(CLI::Range(1, 255));

  DecryptOpts dec;
  CLI::App* dec_cmd = app.add_subcommand("decrypt", "decrypt an envelope file");
  dec_cmd->add_option("--in", dec.in, "input envelope path")->required();
  dec_cmd->add_option("--out", dec.out, "output image (png/ppm)")->required();
  dec_cmd->add_option("--passphrase", dec.passphrase, "secret passphrase")->required();

  AnalyzeOpts an;
  CLI::App* an_cmd =
      app.add_subcommand("analyze", "run the randomness measurement battery");
  an_cmd->add_option("--in", an.in, "input image (png/ppm/pgm)")->required();
  an_cmd->add_option("--passphrase", an.passphrase, "secret passphrase")->required();
  an_cmd->add_option("--trials", an.cfg.trials, "avalanche trials")
      ->default_val(100)
      ->check(CLI::Range(1, 100000));
  an_cmd->add_option("--window", an.cfg.window, "goodness-of-fit window bytes")
      ->default_val(600)
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
  an_cmd->add_option("--bins", an.cfg.bins, "histogram bins")
      ->default_val(10)
      ->check(CLI::Range(2, 256));
  an_cmd->add_option("--alpha", an.cfg.alpha, "significance level")
      ->default_val(0.01)
      ->check(CLI::Range(1e-6, 0.5));
  an_cmd->add_option("--segment", an.cfg.segment, "spectral segment length")
      ->default_val(1024)
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
  an_cmd->add_option("--rounds", an.cfg.rounds, "encryption rounds")
      ->default_val(3)
      ->check(CLI::Range(1, 255));
  an_cmd->add_option("--seed", an.cfg.seed, "trial pixel selection seed")
      ->default_val(1729);
  an_cmd->add_option("--rmt-side", an.cfg.rmt_max_side,
                     "max side of the spectral-distribution crop")
      ->default_val(512)
      ->check(CLI::Range(std::size_t{32}, std::size_t{4096}));
  an_cmd->add_flag_callback(
      "--dynamic-dof", [&an] { an.cfg.dof_mode = DofMode::dynamic; },
      "size degrees of freedom from the window instead of the bins");
  an_cmd->add_option("--report", an.report_path, "write report json here");
  an_cmd->add_option("--plots", an.plots_dir, "write plot csv files here");
  an_cmd->add_flag("--table", an.print_table,
                   "print the reference comparison table");

  GenOpts gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a test image");
  gen_cmd
      ->add_option("--pattern", gen.pattern,
                   "gradient | blocks | xray | noise")
      ->default_val("noise")
      ->check(CLI::IsMember({"gradient", "blocks", "xray", "noise"}));
  gen_cmd->add_option("--out", gen.out, "output image (png/ppm)")->required();
  gen_cmd->add_option("--size", gen.height, "square image side")
      ->default_val(256)
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 14));
  gen_cmd->add_option("--width", gen.width,
                      "width when different from --size");
  gen_cmd->add_option("--seed", gen.seed, "pattern seed")->default_val(1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  if (!gen_cmd->count("--width")) gen.width = gen.height;

  try {
    if (*enc_cmd) return do_encrypt(enc, out);
    if (*dec_cmd) return do_decrypt(dec, out);
    if (*an_cmd) return do_analyze(an, out);
    if (*gen_cmd) return do_gen(gen, out);
    err << "no command selected\n";
    return kUsageError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << "\n";
    return kNumericError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kNumericError;
  }
}

}  // namespace gfht::cli
