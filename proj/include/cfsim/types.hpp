#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace cfsim {

enum class Architecture { kCentralized, kDistributed, kClusterBased };
enum class PrecoderType { kMr, kMmse };

std::string to_string(Architecture a);
std::string to_string(PrecoderType p);
Architecture architecture_from_string(const std::string& s);
PrecoderType precoder_from_string(const std::string& s);

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Cluster partition of the square area, rows x cols rectangles,
/// row-major cluster indexing.
struct ClusterGrid {
  int rows = 1;
  int cols = 1;

  int clusters() const { return rows * cols; }
  std::string label() const { return std::to_string(rows) + "x" + std::to_string(cols); }
  bool operator==(const ClusterGrid&) const = default;
};

ClusterGrid grid_from_string(const std::string& s);

/// Full parameter set of one simulated network. Field defaults are the
/// reference operating point of the simulator.
struct NetworkConfig {
  double area_side_m = 980.0;
  double bandwidth_hz = 20e6;   // metadata only, never enters the SE math
  int num_aps = 96;             // L_T
  int num_ues = 40;             // K_T
  int antennas_per_ap = 4;      // N
  ClusterGrid grid{2, 2};       // M = rows*cols clusters, L = L_T/M APs each
  double ap_power_mw = 1000.0;  // max DL transmit power per AP
  double noise_dbm = -94.0;
  double shadow_std_db = 4.0;
  double ul_power_mw = 100.0;   // per-UE uplink power entering the MMSE matrix
  double ap_height_m = 10.0;
  int num_setups = 100;
  int num_realizations = 300;
  std::uint64_t seed = 1;

  int num_clusters() const { return grid.clusters(); }
  int aps_per_cluster() const { return num_aps / num_clusters(); }
  /// Noise power in mW, linearized from noise_dbm.
  double noise_mw() const { return dbm_to_mw(noise_dbm); }

  /// Throws ConfigError on any violated invariant (non-dividing grid,
  /// non-positive power/size/count).
  void validate() const;

  bool operator==(const NetworkConfig&) const = default;
};

}  // namespace cfsim
