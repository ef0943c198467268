#include "cfsim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace cfsim {

Eigen::VectorXcd ChannelRealization::view_cluster(int k, int m) const {
  const int len = aps_per_cluster * antennas_per_ap;
  if (k < 0 || k >= num_ues || m < 0 || m * aps_per_cluster >= num_aps) {
    throw std::out_of_range("view_cluster: index out of range");
  }
  return h.col(k).segment(static_cast<Eigen::Index>(m) * len, len);
}

Eigen::VectorXcd ChannelRealization::view_centralized(int k) const {
  if (k < 0 || k >= num_ues) throw std::out_of_range("view_centralized: bad UE index");
  return h.col(k);
}

Eigen::VectorXcd ChannelRealization::view_distributed(int k, int q) const {
  if (k < 0 || k >= num_ues || q < 0 || q >= num_aps) {
    throw std::out_of_range("view_distributed: index out of range");
  }
  return h.col(k).segment(static_cast<Eigen::Index>(q) * antennas_per_ap, antennas_per_ap);
}

LargeScale large_scale(const Deployment& dep, const NetworkConfig& cfg, Stream& stream) {
  LargeScale ls;
  ls.beta_db.resize(cfg.num_ues, cfg.num_aps);
  ls.beta.resize(cfg.num_ues, cfg.num_aps);
  for (int k = 0; k < cfg.num_ues; ++k) {
    for (int l = 0; l < cfg.num_aps; ++l) {
      const double shadowing = cfg.shadow_std_db * stream.normal();
      const double db = -30.5 - 37.6 * std::log10(dep.dist(k, l)) + shadowing;
      ls.beta_db(k, l) = db;
      ls.beta(k, l) = db_to_linear(db);
    }
  }
  return ls;
}

ChannelRealization draw_realization(const LargeScale& ls, const NetworkConfig& cfg,
                                    Stream& stream) {
  ChannelRealization cr;
  cr.num_ues = cfg.num_ues;
  cr.num_aps = cfg.num_aps;
  cr.antennas_per_ap = cfg.antennas_per_ap;
  cr.aps_per_cluster = cfg.aps_per_cluster();
  cr.h.resize(static_cast<Eigen::Index>(cfg.num_aps) * cfg.antennas_per_ap, cfg.num_ues);
  for (int k = 0; k < cfg.num_ues; ++k) {
    for (int l = 0; l < cfg.num_aps; ++l) {
      const double amp = std::sqrt(ls.beta(k, l));
      for (int n = 0; n < cfg.antennas_per_ap; ++n) {
        cr.h(static_cast<Eigen::Index>(l) * cfg.antennas_per_ap + n, k) =
            amp * stream.cnormal();
      }
    }
  }
  return cr;
}

}  // namespace cfsim
