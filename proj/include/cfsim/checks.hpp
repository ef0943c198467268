#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cfsim {

/// Worst relative deviations between architectures that must coincide:
/// cluster-based with one cluster vs. centralized, and cluster-based with
/// single-AP clusters vs. distributed, compared over full pipelines
/// (normalized precoders and finalized SINR) on random small instances.
struct DegeneracySummary {
  int instances = 0;
  double max_precoder_err_m1 = 0.0;
  double max_sinr_err_m1 = 0.0;
  double max_precoder_err_l1 = 0.0;
  double max_sinr_err_l1 = 0.0;

  double worst() const;
};

/// Random instances with N <= 2, L_T <= 8, K_T <= 4, both precoders.
DegeneracySummary degeneracy_check(std::uint64_t seed, int instances);

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The invariant suite behind the `check` CLI subcommand: architecture
/// degeneracies, channel reshape consistency, normalization identity and
/// the complexity-count identities.
std::vector<CheckLine> run_invariant_checks(std::uint64_t seed, int instances);

}  // namespace cfsim
