#include "cfsim/complexity.hpp"

#include <limits>
#include <numeric>

#include "cfsim/errors.hpp"

namespace cfsim {

namespace {

using Wide = __int128;

std::int64_t narrow(Wide v, const char* what) {
  if (v < 0 || v > static_cast<Wide>(std::numeric_limits<std::int64_t>::max())) {
    throw NumericalError(std::string("complexity count overflow in ") + what);
  }
  return static_cast<std::int64_t>(v);
}

Wide exact_div(Wide num, Wide den, const char* what) {
  if (num % den != 0) {
    throw NumericalError(std::string("non-exact division in ") + what);
  }
  return num / den;
}

/// Cost of one processing unit of dimension `dim` serving `ues` UEs:
/// Gram accumulation + inversion + solve.
Wide unit_cost(Wide dim, Wide ues, const char* what) {
  const Wide gram = exact_div(dim * dim + dim, 2, what) * ues;
  const Wide solve = dim * dim;
  const Wide invert = exact_div(dim * dim * dim - dim, 3, what);
  return gram + solve + invert;
}

void check_params(int antennas, int aps, int clusters, int ues) {
  if (antennas < 1 || aps < 1 || clusters < 1 || ues < 1) {
    throw NumericalError("complexity counts require all parameters >= 1");
  }
}

}  // namespace

std::int64_t count_centralized(int antennas, int aps_per_cluster, int clusters, int ues) {
  check_params(antennas, aps_per_cluster, clusters, ues);
  const Wide dim = Wide(antennas) * aps_per_cluster * clusters;
  return narrow(unit_cost(dim, ues, "count_centralized"), "count_centralized");
}

std::int64_t count_distributed(int antennas, int total_aps, int ues) {
  check_params(antennas, total_aps, 1, ues);
  return narrow(unit_cost(antennas, ues, "count_distributed") * total_aps,
                "count_distributed");
}

std::int64_t count_cluster(int antennas, int aps_per_cluster, int clusters, int ues) {
  check_params(antennas, aps_per_cluster, clusters, ues);
  const Wide dim = Wide(antennas) * aps_per_cluster;
  return narrow(unit_cost(dim, ues, "count_cluster") * clusters, "count_cluster");
}

std::vector<ComplexityReport> ratio_table(const NetworkConfig& cfg,
                                          const std::vector<int>& cluster_counts) {
  const std::int64_t centralized = count_centralized(
      cfg.antennas_per_ap, cfg.num_aps, 1, cfg.num_ues);
  std::vector<ComplexityReport> rows;
  rows.reserve(cluster_counts.size());
  for (int m : cluster_counts) {
    if (m < 1 || cfg.num_aps % m != 0) {
      throw ConfigError("cluster count " + std::to_string(m) + " does not divide num_aps (" +
                        std::to_string(cfg.num_aps) + ")");
    }
    const int aps_per_cluster = cfg.num_aps / m;
    ComplexityReport row;
    row.scheme = "cluster";
    row.count = count_cluster(cfg.antennas_per_ap, aps_per_cluster, m, cfg.num_ues);
    row.centralized_count = centralized;
    row.antennas = cfg.antennas_per_ap;
    row.aps_per_cluster = aps_per_cluster;
    row.clusters = m;
    row.total_aps = cfg.num_aps;
    row.ues = cfg.num_ues;
    const std::int64_t g = std::gcd(row.count, centralized);
    row.ratio_to_centralized = Ratio{row.count / g, centralized / g};
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cfsim
