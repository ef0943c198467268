#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cfsim/channel.hpp"
#include "cfsim/precoding.hpp"

namespace cfsim {

/// Running estimator of the hardening-bound SINR terms.
///
/// Per UE k it tracks the mean effective channel sum_m E{h_km^H w_km} and,
/// for every transmitting UE i, the mean received power E{|sum_m h_km^H w_im|^2}.
/// Accumulators are mergeable: sums and counts add, so realizations can be
/// processed in parallel and reduced afterwards.
struct SinrAccumulator {
  explicit SinrAccumulator(int n_ues)
      : signal_sum(Eigen::VectorXcd::Zero(n_ues)),
        cross_power_sum(Eigen::MatrixXd::Zero(n_ues, n_ues)) {}

  long count = 0;
  Eigen::VectorXcd signal_sum;      // sum over realizations of g_kk
  Eigen::MatrixXd cross_power_sum;  // (k, i): sum over realizations of |g_ki|^2

  /// G(k, i) = h_k^H w_i for one realization (effective-channel matrix).
  void add_realization(const Eigen::MatrixXcd& g);
  void merge(const SinrAccumulator& other);
};

/// Adds one realization's inner products between the stacked channel and the
/// normalized precoders. The per-cluster sum over m collapses into one
/// stacked dot product for every architecture.
void accumulate(SinrAccumulator& acc, const ChannelRealization& ch, const PrecoderSet& ws);

/// Hardening-bound effective SINR per UE:
///   |S_k|^2 / (max(0, sum_i C_ki - |S_k|^2) + sigma2)
/// with S_k, C_ki the accumulated sample means. The bracket is clamped at
/// zero: finite-sample noise can push it slightly negative while the bound
/// itself stays valid. Requires at least two observed realizations.
Eigen::VectorXd finalize_sinr(const SinrAccumulator& acc, double sigma2_mw);

inline double se_from_sinr(double sinr) { return std::log2(1.0 + sinr); }

/// Per-UE spectral-efficiency samples pooled into an empirical CDF.
struct SEReport {
  std::vector<double> samples;  // sorted ascending
  std::vector<double> cdf;      // ordinate i/n for sample i (1-based)
  double median = 0.0;
  double mean = 0.0;
  double p10 = 0.0;
};

/// Sorts the samples, attaches i/n ordinates, and computes the summary
/// statistics (quantiles by linear interpolation between closest ranks).
SEReport aggregate_cdf(std::vector<double> samples);

}  // namespace cfsim
