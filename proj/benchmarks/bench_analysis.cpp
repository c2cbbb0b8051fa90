#include <benchmark/benchmark.h>

#include <gfht/analysis.hpp>
#include <gfht/metrics.hpp>
#include <gfht/rmt.hpp>
#include <gfht/spectral.hpp>
#include <gfht/synth.hpp>

#include <cstdint>
#include <random>
#include <vector>

using namespace gfht;

namespace {

std::vector<Byte> random_bytes(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Byte> out(n);
  for (auto& b : out) b = static_cast<Byte>(rng() & 0xff);
  return out;
}

void BM_npcr(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  RgbImage a = make_test_image(Pattern::noise, side, side, 1);
  RgbImage b = make_test_image(Pattern::noise, side, side, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(diff_stats(a, b));
  }
  state.SetBytesProcessed(state.iterations() *
                          static_cast<std::int64_t>(3 * side * side));
}
BENCHMARK(BM_npcr)->Arg(256)->Arg(1024);

void BM_zigzag_scan(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  RgbImage img = make_test_image(Pattern::noise, side, side, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(image_scan(img, Direction::diagonal));
  }
  state.SetBytesProcessed(state.iterations() *
                          static_cast<std::int64_t>(3 * side * side));
}
BENCHMARK(BM_zigzag_scan)->Arg(256)->Arg(1024);

void BM_gof_scan(benchmark::State& state) {
  const auto bytes = random_bytes(static_cast<std::size_t>(state.range(0)), 11);
  GofConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sliding_window_gof(bytes, cfg));
  }
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_gof_scan)->Arg(1 << 18)->Arg(1 << 20);

void BM_welch_psd(benchmark::State& state) {
  const auto bytes = random_bytes(1 << 20, 13);
  const auto segment = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(welch_psd(bytes, segment, 0.5));
  }
  state.SetBytesProcessed(state.iterations() * (1 << 20));
}
BENCHMARK(BM_welch_psd)->Arg(256)->Arg(1024)->Arg(4096);

void BM_adjacency_correlation(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  RgbImage img = make_test_image(Pattern::xray, side, side, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        adjacency_correlation(img.green, Direction::diagonal));
  }
}
BENCHMARK(BM_adjacency_correlation)->Arg(256)->Arg(1024);

void BM_eigenvalues(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  RgbImage img = make_test_image(Pattern::noise, side, side, 19);
  RealMatrix m = standardize_matrix(img.blue);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenvalues(m));
  }
}
BENCHMARK(BM_eigenvalues)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
