#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cfsim/types.hpp"

namespace cfsim {

/// Exact rational, kept reduced. Display rounding happens only at I/O.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Exact complex-multiplication count for computing the MMSE precoders of
/// all K_T UEs once per coherence block (Gram accumulation, one inversion
/// and one solve per processing unit).
struct ComplexityReport {
  std::string scheme;
  std::int64_t count = 0;
  std::int64_t centralized_count = 0;  // same network, M = 1
  int antennas = 0;                    // N
  int aps_per_cluster = 0;             // L
  int clusters = 0;                    // M
  int total_aps = 0;                   // L_T
  int ues = 0;                         // K_T
  Ratio ratio_to_centralized{1, 1};
};

/// (NLM)^2+NLM)/2 * K_T + (NLM)^2 + ((NLM)^3 - NLM)/3, exact integers.
std::int64_t count_centralized(int antennas, int aps_per_cluster, int clusters, int ues);

/// Per-AP cost times L_T: (N^2+N)/2 * K_T * L_T + N^2 * L_T + (N^3-N)/3 * L_T.
std::int64_t count_distributed(int antennas, int total_aps, int ues);

/// Per-cluster cost times M: ((NL)^2+NL)/2 * K_T * M + (NL)^2 * M + ((NL)^3-NL)/3 * M.
std::int64_t count_cluster(int antennas, int aps_per_cluster, int clusters, int ues);

/// One row per cluster count in `cluster_counts` (each must divide L_T):
/// cluster-based count and its exact ratio to the centralized count of the
/// same network.
std::vector<ComplexityReport> ratio_table(const NetworkConfig& cfg,
                                          const std::vector<int>& cluster_counts);

}  // namespace cfsim
