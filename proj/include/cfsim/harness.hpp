#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cfsim/channel.hpp"
#include "cfsim/complexity.hpp"
#include "cfsim/evaluation.hpp"
#include "cfsim/precoding.hpp"
#include "cfsim/rng.hpp"
#include "cfsim/types.hpp"

namespace cfsim {

/// Everything one invocation simulates. The same network is evaluated once
/// per cluster grid; centralized and distributed baselines are rebuilt on
/// each grid's deployment so every comparison shares its geometry.
struct ExperimentPlan {
  NetworkConfig cfg;
  std::vector<Architecture> architectures{Architecture::kCentralized,
                                          Architecture::kDistributed,
                                          Architecture::kClusterBased};
  std::vector<PrecoderType> precoders{PrecoderType::kMr, PrecoderType::kMmse};
  std::vector<ClusterGrid> grids{{2, 1}, {2, 2}, {2, 4}};
  int workers = 0;  // 0 = one per hardware thread

  void validate() const;
  bool operator==(const ExperimentPlan&) const = default;
};

/// Per-UE outcome of one (setup, architecture, precoder) evaluation.
struct ArchEvaluation {
  Eigen::VectorXd sinr;
  Eigen::VectorXd se;
  double max_rel_power_err = 0.0;  // worst |mean||w||^2/rho - 1| after normalization
  int zero_slots = 0;
  std::vector<Eigen::MatrixXcd> w;  // normalized precoders, one matrix per realization
};

/// Full per-setup pipeline for one architecture/precoder pair on a shared
/// channel batch: raw directions for every realization, batch normalization,
/// SINR accumulation, hardening-bound SE.
ArchEvaluation evaluate_architecture(const NetworkConfig& cfg, Architecture arch,
                                     PrecoderType prec,
                                     const std::vector<ChannelRealization>& realizations);

struct RunResult {
  struct Entry {
    ClusterGrid grid;
    Architecture arch;
    PrecoderType precoder;
    SEReport report;
  };
  std::vector<Entry> entries;  // fixed order: grid-major, then architecture, then precoder
  std::vector<ComplexityReport> complexity;
  double max_normalization_err = 0.0;
  long zero_precoder_slots = 0;

  const SEReport* find(const ClusterGrid& grid, Architecture arch, PrecoderType prec) const;
};

/// Runs the full Monte Carlo experiment.
///
/// Setups are the parallel unit; every random draw comes from a substream
/// keyed by (seed, setup, purpose, realization), and per-setup results land
/// in preassigned slots, so the output is byte-identical for a given
/// (plan, seed) regardless of worker count. Channel realizations are shared
/// across architectures and precoders within a setup (common random
/// numbers), and the underlying Gaussian draws are shared across grids.
///
/// Memory: the two-pass normalization buffers the R raw direction matrices
/// of the architecture under evaluation plus the R channel matrices, i.e.
/// O(R * K_T * N * L_T) complex scalars per in-flight setup.
RunResult run(const ExperimentPlan& plan);

}  // namespace cfsim
