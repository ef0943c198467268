#pragma once

#include <Eigen/Dense>

#include "cfsim/rng.hpp"
#include "cfsim/topology.hpp"
#include "cfsim/types.hpp"

namespace cfsim {

/// Large-scale fading: pathloss plus log-normal shadowing, fixed per setup.
struct LargeScale {
  Eigen::MatrixXd beta_db;  // num_ues x num_aps
  Eigen::MatrixXd beta;     // linear power gains, 10^(beta_db/10)
};

/// One small-scale fading realization.
///
/// Storage is the stacked network channel: column k is UE k's channel across
/// all AP antennas, AP-major (AP q occupies rows [q*N, (q+1)*N)). Because AP
/// indices are cluster-major, the rows of cluster m are the contiguous block
/// [m*L*N, (m+1)*L*N), so the cluster / centralized / per-AP views below are
/// all segments of the same column and concatenating every cluster view
/// reproduces the centralized one.
struct ChannelRealization {
  int num_ues = 0;
  int num_aps = 0;
  int antennas_per_ap = 0;
  int aps_per_cluster = 0;
  Eigen::MatrixXcd h;  // (N*L_T) x K_T

  /// Collective channel of UE k seen by cluster m, length L*N.
  Eigen::VectorXcd view_cluster(int k, int m) const;
  /// Network-wide channel of UE k, length N*L_T (all clusters stacked).
  Eigen::VectorXcd view_centralized(int k) const;
  /// Channel of UE k at the single AP q, length N.
  Eigen::VectorXcd view_distributed(int k, int q) const;
};

/// beta_db(k, l) = -30.5 - 37.6*log10(d_kl / 1 m) + alpha_kl with shadowing
/// alpha ~ N(0, shadow_std_db^2) i.i.d. across (UE, AP) pairs.
/// Draw order: row-major (k ascending, l ascending).
LargeScale large_scale(const Deployment& dep, const NetworkConfig& cfg, Stream& stream);

/// h_kl ~ CN(0, beta(k,l) I_N), independent across (k, l, n).
/// Draw order: k ascending, l ascending, n ascending.
ChannelRealization draw_realization(const LargeScale& ls, const NetworkConfig& cfg,
                                    Stream& stream);

}  // namespace cfsim
