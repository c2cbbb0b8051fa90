#include <benchmark/benchmark.h>

#include <gfht/cipher.hpp>
#include <gfht/key_schedule.hpp>
#include <gfht/synth.hpp>

#include <cstdint>
#include <string>

using namespace gfht;

namespace {

KeyMaterial key_for(std::size_t h, std::size_t w, int rounds) {
  Salt salt{};
  salt.bytes = {0x12, 0x34, 0x56, 0x78};
  return derive_key_material(as_bytes(std::string("bench")), salt, h, w, rounds);
}

void BM_sha256(benchmark::State& state) {
  std::vector<Byte> buf(static_cast<std::size_t>(state.range(0)), 0xa5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sha256(buf));
  }
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_sha256)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 20);

void BM_key_schedule(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  Salt salt{};
  salt.bytes = {1, 2, 3, 4};
  const auto pass = as_bytes(std::string("bench"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(derive_key_material(pass, salt, side, side, 3));
  }
}
BENCHMARK(BM_key_schedule)->Arg(64)->Arg(256)->Arg(1024);

void BM_crossover(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  RgbImage img = make_test_image(Pattern::noise, side, side, 7);
  KeyMaterial km = key_for(side, side, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(crossover(img.red, km.v_key, km.h_key));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(side * side));
}
BENCHMARK(BM_crossover)->Arg(256)->Arg(1024);

void BM_encrypt_round(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  RgbImage img = make_test_image(Pattern::noise, side, side, 7);
  KeyMaterial km = key_for(side, side, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(encrypt_round(img.red, km.key_red, km.v_key, km.h_key));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(side * side));
}
BENCHMARK(BM_encrypt_round)->Arg(256)->Arg(1024);

void BM_encrypt_image(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  RgbImage img = make_test_image(Pattern::xray, side, side, 7);
  const auto pass = as_bytes(std::string("bench"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(encrypt(img, pass, 3));
  }
  state.SetBytesProcessed(state.iterations() *
                          static_cast<std::int64_t>(3 * side * side));
}
BENCHMARK(BM_encrypt_image)->Arg(256)->Arg(512)->Arg(1024);

void BM_decrypt_image(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  RgbImage img = make_test_image(Pattern::xray, side, side, 7);
  const auto pass = as_bytes(std::string("bench"));
  CipherEnvelope env = encrypt(img, pass, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decrypt(env, pass));
  }
  state.SetBytesProcessed(state.iterations() *
                          static_cast<std::int64_t>(3 * side * side));
}
BENCHMARK(BM_decrypt_image)->Arg(256)->Arg(512)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
