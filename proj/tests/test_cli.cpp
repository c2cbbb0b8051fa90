#include <doctest.h>

#include <gfht/cipher.hpp>
#include <gfht/image.hpp>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "../tools/cli.hpp"
#include "support/test_util.hpp"

using gfht::Byte;
using gfht::RgbImage;
using testutil::tmp_path;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = gfht::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("gen writes a loadable image of the requested shape") {
  std::string path = tmp_path("gen_gradient.ppm");
  CliResult r = run_cli({"gen", "--pattern", "gradient", "--out", path,
                         "--size", "32"});
  REQUIRE(r.code == gfht::cli::kOk);
  CHECK(r.out.find("wrote") != std::string::npos);

  RgbImage img = gfht::load_image(path);
  CHECK(img.height() == 32);
  CHECK(img.width() == 32);
}

TEST_CASE("gen honours a distinct width") {
  std::string path = tmp_path("gen_rect.ppm");
  CliResult r = run_cli({"gen", "--pattern", "noise", "--out", path, "--size",
                         "32", "--width", "16", "--seed", "9"});
  REQUIRE(r.code == gfht::cli::kOk);
  RgbImage img = gfht::load_image(path);
  CHECK(img.height() == 32);
  CHECK(img.width() == 16);
}

TEST_CASE("gen rejects unknown patterns") {
  CliResult r = run_cli({"gen", "--pattern", "swirl", "--out",
                         tmp_path("never.ppm")});
  CHECK(r.code == gfht::cli::kUsageError);
}

TEST_CASE("encrypt and decrypt round-trip through the cli") {
  std::string plain = tmp_path("cli_plain.ppm");
  std::string sealed = tmp_path("cli_sealed.gfht");
  std::string opened = tmp_path("cli_opened.ppm");

  REQUIRE(run_cli({"gen", "--pattern", "blocks", "--out", plain, "--size", "48",
                   "--seed", "3"}).code == gfht::cli::kOk);

  CliResult enc = run_cli({"encrypt", "--in", plain, "--out", sealed,
                           "--passphrase", "open sesame"});
  REQUIRE(enc.code == gfht::cli::kOk);
  CHECK(enc.out.rfind("salt ", 0) == 0);
  CHECK(enc.out.size() == 5 + 8 + 1);  // "salt " + 8 hex digits + newline

  CliResult dec = run_cli({"decrypt", "--in", sealed, "--out", opened,
                           "--passphrase", "open sesame"});
  REQUIRE(dec.code == gfht::cli::kOk);
  CHECK(gfht::load_image(opened) == gfht::load_image(plain));
}

TEST_CASE("cli encryption is deterministic for fixed inputs") {
  std::string plain = tmp_path("cli_det.ppm");
  std::string a = tmp_path("cli_det_a.gfht");
  std::string b = tmp_path("cli_det_b.gfht");
  REQUIRE(run_cli({"gen", "--out", plain, "--size", "32"}).code == gfht::cli::kOk);
  REQUIRE(run_cli({"encrypt", "--in", plain, "--out", a, "--passphrase", "p"})
              .code == gfht::cli::kOk);
  REQUIRE(run_cli({"encrypt", "--in", plain, "--out", b, "--passphrase", "p"})
              .code == gfht::cli::kOk);
  CHECK(gfht::read_file(a) == gfht::read_file(b));
}

TEST_CASE("decrypting with the wrong passphrase still exits cleanly") {
  std::string plain = tmp_path("cli_wrongpw.ppm");
  std::string sealed = tmp_path("cli_wrongpw.gfht");
  std::string opened = tmp_path("cli_wrongpw_out.ppm");
  REQUIRE(run_cli({"gen", "--out", plain, "--size", "32", "--seed", "4"}).code ==
          gfht::cli::kOk);
  REQUIRE(run_cli({"encrypt", "--in", plain, "--out", sealed, "--passphrase",
                   "right"}).code == gfht::cli::kOk);

  // no integrity tag in the envelope: a wrong passphrase produces garbage,
  // not an error
  CliResult dec = run_cli({"decrypt", "--in", sealed, "--out", opened,
                           "--passphrase", "wrong"});
  REQUIRE(dec.code == gfht::cli::kOk);
  CHECK(gfht::load_image(opened) != gfht::load_image(plain));
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli({}).code == gfht::cli::kUsageError);
  CHECK(run_cli({"transmute"}).code == gfht::cli::kUsageError);
  CHECK(run_cli({"encrypt"}).code == gfht::cli::kUsageError);  // missing options
  CHECK(run_cli({"encrypt", "--in", "x", "--out", "y", "--passphrase", "p",
                 "--rounds", "0"}).code == gfht::cli::kUsageError);
  CHECK(run_cli({"analyze", "--in", "x", "--passphrase", "p", "--alpha", "0.7"})
            .code == gfht::cli::kUsageError);
}

TEST_CASE("help exits with code 0") {
  CliResult r = run_cli({"--help"});
  CHECK(r.code == gfht::cli::kOk);
  CHECK(r.out.find("exit codes") != std::string::npos);
}

TEST_CASE("io failures exit with code 3") {
  CliResult r = run_cli({"encrypt", "--in", tmp_path("missing.ppm"), "--out",
                         tmp_path("never.gfht"), "--passphrase", "p"});
  CHECK(r.code == gfht::cli::kIoError);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("malformed envelopes exit with code 2") {
  std::string junk = tmp_path("junk.gfht");
  gfht::write_file(junk, {1, 2, 3, 4, 5});
  CliResult r = run_cli({"decrypt", "--in", junk, "--out",
                         tmp_path("never.ppm"), "--passphrase", "p"});
  CHECK(r.code == gfht::cli::kUsageError);
}

TEST_CASE("numeric failures exit with code 4") {
  // a constant image has zero variance, which the correlation stage
  // cannot digest
  RgbImage flat(48, 48);
  for (int c = 0; c < 3; ++c)
    for (auto& b : flat.layer(c).data) b = 200;
  std::string path = tmp_path("flat.ppm");
  gfht::save_image(flat, path);

  CliResult r = run_cli({"analyze", "--in", path, "--passphrase", "p",
                         "--trials", "2", "--rmt-side", "32"});
  CHECK(r.code == gfht::cli::kNumericError);
}

TEST_CASE("analyze prints a parseable report to stdout") {
  std::string plain = tmp_path("cli_analyze.ppm");
  REQUIRE(run_cli({"gen", "--out", plain, "--size", "48", "--seed", "6"}).code ==
          gfht::cli::kOk);

  CliResult r = run_cli({"analyze", "--in", plain, "--passphrase", "p",
                         "--trials", "3", "--rmt-side", "32"});
  REQUIRE(r.code == gfht::cli::kOk);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["config"]["trials"] == 3);
  CHECK(doc["config"]["rmt_max_side"] == 32);
  CHECK(doc["image_id"] == plain);
}

TEST_CASE("analyze writes report and plots to files when asked") {
  std::string plain = tmp_path("cli_report.ppm");
  std::string report = tmp_path("cli_report.json");
  std::string plots = tmp_path("cli_plots");
  REQUIRE(run_cli({"gen", "--out", plain, "--size", "48", "--seed", "8"}).code ==
          gfht::cli::kOk);

  CliResult r = run_cli({"analyze", "--in", plain, "--passphrase", "p",
                         "--trials", "2", "--rmt-side", "32", "--report", report,
                         "--plots", plots, "--table"});
  REQUIRE(r.code == gfht::cli::kOk);
  CHECK(r.out.find("report " + report) != std::string::npos);
  CHECK(r.out.find("plots " + plots) != std::string::npos);
  CHECK(r.out.find("cited, not computed") != std::string::npos);

  auto raw = gfht::read_file(report);
  nlohmann::json doc = nlohmann::json::parse(std::string(raw.begin(), raw.end()));
  CHECK(doc["config"]["trials"] == 2);
  CHECK(std::filesystem::exists(std::filesystem::path(plots) /
                                "spectrum_cipher.csv"));
}

TEST_CASE("analyze accepts the dynamic dof flag") {
  std::string plain = tmp_path("cli_dyn.ppm");
  REQUIRE(run_cli({"gen", "--out", plain, "--size", "48", "--seed", "2"}).code ==
          gfht::cli::kOk);
  CliResult r = run_cli({"analyze", "--in", plain, "--passphrase", "p",
                         "--trials", "2", "--rmt-side", "32", "--dynamic-dof"});
  REQUIRE(r.code == gfht::cli::kOk);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["config"]["dof_mode"] == "dynamic");
  CHECK(doc["gof"]["cipher"]["horizontal"]["dof"].get<double>() ==
        doctest::Approx(std::sqrt(600.0) + 1.0));
}
