#include <benchmark/benchmark.h>

#include "bench.hpp"
#include "stixel/cluster.hpp"
#include "stixel/decoder.hpp"
#include "stixel/wire.hpp"

namespace {

using namespace stixel;

void BM_Decode(benchmark::State& state) {
  const auto calib = bench::reference_camera();
  const auto grid = DepthGrid::linear();
  const auto tensor = bench::random_tensor(7);
  const double threshold = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(decode(tensor, calib, grid, threshold));
  }
}
BENCHMARK(BM_Decode)->Arg(10)->Arg(38)->Arg(90)->Unit(benchmark::kMicrosecond);

void BM_Cluster(benchmark::State& state) {
  const auto calib = bench::reference_camera();
  const auto world = bench::random_scene(7, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cluster(world, calib));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Cluster)->RangeMultiplier(4)->Range(128, 8192)->Complexity()->Unit(
    benchmark::kMillisecond);

void BM_WireEncode(benchmark::State& state) {
  auto world = bench::random_scene(3, static_cast<std::size_t>(state.range(0)));
  world.grid = DepthGrid::linear();
  for (auto _ : state) {
    benchmark::DoNotOptimize(wire::encode(world));
  }
  state.SetBytesProcessed(state.iterations() *
                          static_cast<std::int64_t>(wire::encoded_size(world.stixels.size())));
}
BENCHMARK(BM_WireEncode)->Arg(2000)->Arg(15360);

void BM_WireDecode(benchmark::State& state) {
  auto world = bench::random_scene(3, static_cast<std::size_t>(state.range(0)));
  world.grid = DepthGrid::linear();
  const auto bytes = wire::encode(world);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wire::decode(bytes));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes.size()));
}
BENCHMARK(BM_WireDecode)->Arg(2000)->Arg(15360);

}  // namespace

BENCHMARK_MAIN();
