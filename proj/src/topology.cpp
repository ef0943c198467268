#include "cfsim/topology.hpp"

#include <cmath>

#include "cfsim/errors.hpp"

namespace cfsim {

std::vector<Rect> cluster_rectangles(const NetworkConfig& cfg) {
  cfg.validate();
  const double w = cfg.area_side_m / cfg.grid.cols;
  const double h = cfg.area_side_m / cfg.grid.rows;
  std::vector<Rect> rects;
  rects.reserve(cfg.num_clusters());
  for (int r = 0; r < cfg.grid.rows; ++r) {
    for (int c = 0; c < cfg.grid.cols; ++c) {
      rects.push_back(Rect{c * w, r * h, (c + 1) * w, (r + 1) * h});
    }
  }
  return rects;
}

Deployment build_deployment(const NetworkConfig& cfg, Stream& stream) {
  cfg.validate();
  const auto rects = cluster_rectangles(cfg);
  const int aps_per_cluster = cfg.aps_per_cluster();

  Deployment dep;
  dep.ue_pos.reserve(cfg.num_ues);
  for (int k = 0; k < cfg.num_ues; ++k) {
    const double x = stream.uniform() * cfg.area_side_m;
    const double y = stream.uniform() * cfg.area_side_m;
    dep.ue_pos.push_back(Vec3{x, y, 0.0});
  }

  dep.ap_pos.reserve(cfg.num_aps);
  dep.ap_cluster.reserve(cfg.num_aps);
  for (int m = 0; m < cfg.num_clusters(); ++m) {
    const Rect& r = rects[m];
    for (int j = 0; j < aps_per_cluster; ++j) {
      const double x = r.x0 + stream.uniform() * r.width();
      const double y = r.y0 + stream.uniform() * r.height();
      dep.ap_pos.push_back(Vec3{x, y, cfg.ap_height_m});
      dep.ap_cluster.push_back(m);
    }
  }

  dep.dist.resize(cfg.num_ues, cfg.num_aps);
  for (int k = 0; k < cfg.num_ues; ++k) {
    for (int l = 0; l < cfg.num_aps; ++l) {
      const double dx = dep.ue_pos[k].x - dep.ap_pos[l].x;
      const double dy = dep.ue_pos[k].y - dep.ap_pos[l].y;
      dep.dist(k, l) = std::sqrt(dx * dx + dy * dy + cfg.ap_height_m * cfg.ap_height_m);
    }
  }
  return dep;
}

}  // namespace cfsim
