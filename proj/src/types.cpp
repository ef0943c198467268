#include "cfsim/types.hpp"

#include <cstdio>

#include "cfsim/errors.hpp"

namespace cfsim {

std::string to_string(Architecture a) {
  switch (a) {
    case Architecture::kCentralized: return "centralized";
    case Architecture::kDistributed: return "distributed";
    case Architecture::kClusterBased: return "cluster";
  }
  return "?";
}

std::string to_string(PrecoderType p) {
  return p == PrecoderType::kMr ? "mr" : "mmse";
}

Architecture architecture_from_string(const std::string& s) {
  if (s == "centralized") return Architecture::kCentralized;
  if (s == "distributed") return Architecture::kDistributed;
  if (s == "cluster" || s == "cluster-based") return Architecture::kClusterBased;
  throw ConfigError("unknown architecture '" + s +
                    "' (expected centralized|distributed|cluster)");
}

PrecoderType precoder_from_string(const std::string& s) {
  if (s == "mr") return PrecoderType::kMr;
  if (s == "mmse") return PrecoderType::kMmse;
  throw ConfigError("unknown precoder '" + s + "' (expected mr|mmse)");
}

ClusterGrid grid_from_string(const std::string& s) {
  int rows = 0, cols = 0;
  char sep = 0;
  if (std::sscanf(s.c_str(), "%d%c%d", &rows, &sep, &cols) != 3 ||
      (sep != 'x' && sep != 'X') || rows < 1 || cols < 1) {
    throw ConfigError("bad cluster grid '" + s + "' (expected ROWSxCOLS, e.g. 2x2)");
  }
  return ClusterGrid{rows, cols};
}

void NetworkConfig::validate() const {
  if (area_side_m <= 0) throw ConfigError("area_side must be > 0");
  if (num_aps < 1) throw ConfigError("num_aps must be >= 1");
  if (num_ues < 1) throw ConfigError("num_ues must be >= 1");
  if (antennas_per_ap < 1) throw ConfigError("antennas_per_ap must be >= 1");
  if (grid.rows < 1 || grid.cols < 1) throw ConfigError("cluster grid must be >= 1x1");
  if (num_aps % num_clusters() != 0) {
    throw ConfigError("num_aps (" + std::to_string(num_aps) +
                      ") not divisible by cluster count (" + grid.label() + " = " +
                      std::to_string(num_clusters()) + ")");
  }
  if (ap_power_mw <= 0) throw ConfigError("ap_power_mw must be > 0");
  if (ul_power_mw <= 0) throw ConfigError("ul_power_mw must be > 0");
  if (shadow_std_db < 0) throw ConfigError("shadow_std_db must be >= 0");
  if (ap_height_m <= 0) throw ConfigError("ap_height must be > 0");
  if (num_setups < 1) throw ConfigError("setups must be >= 1");
  if (num_realizations < 2) throw ConfigError("realizations must be >= 2");
}

}  // namespace cfsim
