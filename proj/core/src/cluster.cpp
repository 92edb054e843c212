#include "stixel/cluster.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include <json.hpp>

#include "stixel/errors.hpp"

namespace stixel {

namespace {

/// Uniform hash grid with cell size eps; a query scans the 3x3(x3) ring.
class NeighborGrid {
 public:
  NeighborGrid(const std::vector<Eigen::Vector3d>& pts, double eps, bool planar)
      : pts_(pts), eps_(eps), planar_(planar) {
    for (std::size_t i = 0; i < pts.size(); ++i) cells_[key(cell(pts[i]))].push_back(i);
  }

  template <typename Fn>
  void for_each_neighbor(std::size_t i, Fn&& fn) const {
    const auto c = cell(pts_[i]);
    const double eps2 = eps_ * eps_;
    const int dz_span = planar_ ? 0 : 1;
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dz = -dz_span; dz <= dz_span; ++dz) {
          auto it = cells_.find(key({c[0] + dx, c[1] + dy, c[2] + dz}));
          if (it == cells_.end()) continue;
          for (std::size_t j : it->second) {
            if ((pts_[j] - pts_[i]).squaredNorm() <= eps2) fn(j);
          }
        }
      }
    }
  }

 private:
  using Cell = std::array<std::int64_t, 3>;

  Cell cell(const Eigen::Vector3d& p) const {
    return {static_cast<std::int64_t>(std::floor(p.x() / eps_)),
            static_cast<std::int64_t>(std::floor(p.y() / eps_)),
            static_cast<std::int64_t>(std::floor(p.z() / eps_))};
  }

  static std::uint64_t key(const Cell& c) {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : c) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }

  const std::vector<Eigen::Vector3d>& pts_;
  double eps_;
  bool planar_;
  // Hash collisions only add candidates; the distance test keeps results exact.
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

bool lex_less(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::tie(a.x(), a.y(), a.z()) < std::tie(b.x(), b.y(), b.z());
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

void fill_bounds(Cluster& c, const StixelWorld& world, const CameraCalib& calib) {
  c.min = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
  c.max = Eigen::Vector3d::Constant(-std::numeric_limits<double>::infinity());
  double depth_sum = 0.0;
  for (std::size_t m : c.members) {
    const Segment3D seg = stixel_to_segment3d(calib, world.stixels[m]);
    c.min = c.min.cwiseMin(seg.top).cwiseMin(seg.bot);
    c.max = c.max.cwiseMax(seg.top).cwiseMax(seg.bot);
    depth_sum += world.stixels[m].depth;
  }
  c.mean_depth = depth_sum / static_cast<double>(c.members.size());
}

}  // namespace

std::vector<Eigen::Vector3d> cluster_features(const StixelWorld& world,
                                              const CameraCalib& calib,
                                              ClusterFeature feature) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(world.stixels.size());
  for (const Stixel& s : world.stixels) {
    const Segment3D seg = stixel_to_segment3d(calib, s);
    if (feature == ClusterFeature::kCentroid3D) {
      out.push_back(seg.midpoint());
    } else {
      const Eigen::Vector3d cam = calib.world_to_camera(seg.midpoint());
      out.emplace_back(cam.x(), cam.z(), 0.0);
    }
  }
  return out;
}

ClusterSet cluster(const StixelWorld& world, const CameraCalib& calib,
                   const ClusterParams& params) {
  if (!(params.eps > 0.0)) throw ConfigError("DBSCAN eps must be positive");
  if (params.min_pts < 1) throw ConfigError("DBSCAN min_pts must be at least 1");

  const auto pts = cluster_features(world, calib, params.feature);
  const std::size_t n = pts.size();
  ClusterSet out;
  out.assignment.assign(n, ClusterSet::kNoise);
  if (n == 0) return out;

  const NeighborGrid grid(pts, params.eps, params.feature == ClusterFeature::kFootprintXZ);
  std::vector<bool> core(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t count = 0;
    grid.for_each_neighbor(i, [&](std::size_t) { ++count; });
    core[i] = count >= static_cast<std::size_t>(params.min_pts);
  }

  // Density-connected components over core points.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t i = 0; i < n; ++i) {
    if (!core[i]) continue;
    grid.for_each_neighbor(i, [&](std::size_t j) {
      if (!core[j]) return;
      const auto a = find_root(parent, i);
      const auto b = find_root(parent, j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    });
  }

  // Canonical ids: order components by their smallest core feature.
  std::unordered_map<std::size_t, std::size_t> rep;  // root -> representative point
  for (std::size_t i = 0; i < n; ++i) {
    if (!core[i]) continue;
    const auto root = find_root(parent, i);
    auto [it, fresh] = rep.emplace(root, i);
    if (!fresh && lex_less(pts[i], pts[it->second])) it->second = i;
  }
  std::vector<std::pair<std::size_t, std::size_t>> order(rep.begin(), rep.end());
  std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
    return lex_less(pts[a.second], pts[b.second]);
  });
  std::unordered_map<std::size_t, int> id_of_root;
  for (std::size_t k = 0; k < order.size(); ++k) {
    id_of_root[order[k].first] = static_cast<int>(k);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) out.assignment[i] = id_of_root.at(find_root(parent, i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) continue;
    int best = ClusterSet::kNoise;
    grid.for_each_neighbor(i, [&](std::size_t j) {
      if (!core[j]) return;
      const int id = out.assignment[j];
      if (best == ClusterSet::kNoise || id < best) best = id;
    });
    out.assignment[i] = best;
  }

  out.clusters.resize(order.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (out.assignment[i] != ClusterSet::kNoise) {
      out.clusters[static_cast<std::size_t>(out.assignment[i])].members.push_back(i);
    }
  }
  for (auto& c : out.clusters) fill_bounds(c, world, calib);
  return out;
}

std::vector<ClusterExtent> cluster_extents(const ClusterSet& clusters,
                                           const StixelWorld& world,
                                           const CameraCalib& calib) {
  std::vector<ClusterExtent> out;
  out.reserve(clusters.clusters.size());
  for (std::size_t k = 0; k < clusters.clusters.size(); ++k) {
    Cluster c = clusters.clusters[k];
    fill_bounds(c, world, calib);
    ClusterExtent e;
    e.id = static_cast<int>(k);
    e.min = c.min;
    e.max = c.max;
    e.count = c.members.size();
    e.mean_depth = c.mean_depth;
    double prob_sum = 0.0;
    for (std::size_t m : c.members) prob_sum += world.stixels[m].prob;
    e.mean_prob = prob_sum / static_cast<double>(c.members.size());
    out.push_back(e);
  }
  return out;
}

std::string clusters_to_json(const ClusterSet& clusters, const StixelWorld& world,
                             const CameraCalib& calib) {
  using nlohmann::json;
  json j = json::array();
  const auto extents = cluster_extents(clusters, world, calib);
  for (std::size_t k = 0; k < extents.size(); ++k) {
    const auto& e = extents[k];
    j.push_back({{"id", e.id},
                 {"count", e.count},
                 {"mean_prob", e.mean_prob},
                 {"mean_depth", e.mean_depth},
                 {"min", {e.min.x(), e.min.y(), e.min.z()}},
                 {"max", {e.max.x(), e.max.y(), e.max.z()}},
                 {"members", clusters.clusters[k].members}});
  }
  return j.dump(2);
}

}  // namespace stixel
