#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cfsim/rng.hpp"
#include "cfsim/types.hpp"

namespace cfsim {

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rect {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool contains(double x, double y) const {
    return x >= x0 && x <= x1 && y >= y0 && y <= y1;
  }
};

/// One drop of AP and UE positions.
///
/// AP indices are cluster-major: cluster m owns the contiguous index range
/// [m*L, (m+1)*L). Channel reshaping relies on this ordering.
struct Deployment {
  std::vector<Vec3> ap_pos;     // z = ap_height
  std::vector<Vec3> ue_pos;     // z = 0
  std::vector<int> ap_cluster;  // AP index -> cluster index, 0-based
  Eigen::MatrixXd dist;         // num_ues x num_aps, includes the height offset
};

/// Partitions the square into rows x cols congruent rectangles,
/// row-major indexed. The tiling is exact.
std::vector<Rect> cluster_rectangles(const NetworkConfig& cfg);

/// Places UEs uniformly over the full square and exactly L = L_T/M APs
/// uniformly inside each cluster rectangle, then fills the 3-D distance
/// matrix (APs sit ap_height above the UE plane).
///
/// Draw order is part of the determinism contract: UEs first (ascending k,
/// x before y), then APs (ascending cluster, ascending slot, x before y).
Deployment build_deployment(const NetworkConfig& cfg, Stream& stream);

}  // namespace cfsim
