#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "stixel/cluster.hpp"
#include "stixel/decoder.hpp"
#include "stixel/errors.hpp"

namespace stixel::bench {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double nearest_rank(const std::vector<double>& sorted, double q) {
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

}  // namespace

LatencyStats summarize(std::string name, std::vector<double> samples_ms) {
  LatencyStats s;
  s.name = std::move(name);
  s.runs = samples_ms.size();
  if (samples_ms.empty()) return s;
  std::sort(samples_ms.begin(), samples_ms.end());
  s.mean_ms = std::accumulate(samples_ms.begin(), samples_ms.end(), 0.0) /
              static_cast<double>(samples_ms.size());
  s.p50_ms = nearest_rank(samples_ms, 0.50);
  s.p90_ms = nearest_rank(samples_ms, 0.90);
  s.p99_ms = nearest_rank(samples_ms, 0.99);
  s.max_ms = samples_ms.back();
  return s;
}

std::string csv_header() { return "benchmark,runs,mean_ms,p50_ms,p90_ms,p99_ms,max_ms"; }

std::string to_csv_row(const LatencyStats& s) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << s.name << ',' << s.runs << ',' << s.mean_ms << ',' << s.p50_ms << ','
      << s.p90_ms << ',' << s.p99_ms << ',' << s.max_ms;
  return out.str();
}

CameraCalib reference_camera() {
  Eigen::Matrix3d r;
  r << 0, 0, 1, -1, 0, 0, 0, -1, 0;
  return CameraCalib(2000, 2000, 960, 640, {1920, 1280}, r, Eigen::Vector3d(0, 0, 1.7));
}

PredictionTensor random_tensor(std::uint64_t seed, int depth_bins, int columns) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  PredictionTensor t(depth_bins, columns, {columns * kDefaultStixelWidth, 1280});
  for (int d = 0; d < depth_bins; ++d) {
    for (int c = 0; c < columns; ++c) {
      float a = u(rng);
      float b = u(rng);
      if (a > b) std::swap(a, b);
      t.at(Channel::kTop, d, c) = a;
      t.at(Channel::kBottom, d, c) = b;
      t.at(Channel::kProb, d, c) = u(rng);
    }
  }
  return t;
}

StixelWorld random_scene(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> jitter(0.0, 1.0);
  std::vector<std::pair<double, double>> objects(12);
  for (auto& [col, depth] : objects) {
    col = 240 * u(rng);
    depth = 6 + 55 * u(rng);
  }
  StixelWorld world;
  world.image = {1920, 1280};
  world.stixels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double col = 240 * u(rng);
    double depth = 4 + 62 * u(rng);
    if (u(rng) < 0.85) {
      const auto& o = objects[i % objects.size()];
      col = o.first + 5 * jitter(rng);
      depth = o.second + jitter(rng);
    }
    Stixel s;
    s.col = std::clamp(static_cast<int>(col), 0, 239);
    s.depth = std::clamp(depth, 4.0, 66.0);
    s.v_top = 300 + static_cast<int>(300 * u(rng));
    s.v_bot = s.v_top + 1 + static_cast<int>(300 * u(rng));
    s.prob = u(rng);
    world.stixels.push_back(s);
  }
  return world;
}

LatencyStats bench_decode(std::size_t frames, std::uint64_t seed, double threshold) {
  if (frames == 0) throw ConfigError("bench: frame count must be positive");
  const auto calib = reference_camera();
  const auto grid = DepthGrid::linear();
  std::vector<double> samples;
  samples.reserve(frames);
  volatile std::size_t sink = 0;
  for (std::size_t i = 0; i < frames; ++i) {
    const auto tensor = random_tensor(seed + i);
    const auto start = Clock::now();
    sink = sink + decode(tensor, calib, grid, threshold).world.stixels.size();
    samples.push_back(elapsed_ms(start));
  }
  return summarize("decode", std::move(samples));
}

LatencyStats bench_cluster(std::size_t frames, std::size_t stixels, std::uint64_t seed) {
  if (frames == 0) throw ConfigError("bench: frame count must be positive");
  const auto calib = reference_camera();
  std::vector<double> samples;
  samples.reserve(frames);
  volatile std::size_t sink = 0;
  for (std::size_t i = 0; i < frames; ++i) {
    const auto world = random_scene(seed + i, stixels);
    const auto start = Clock::now();
    sink = sink + cluster(world, calib).clusters.size();
    samples.push_back(elapsed_ms(start));
  }
  return summarize("cluster", std::move(samples));
}

}  // namespace stixel::bench
