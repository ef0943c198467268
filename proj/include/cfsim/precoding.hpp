#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cfsim/types.hpp"

namespace cfsim {

/// Solves A X = B for Hermitian positive definite A via one Cholesky
/// factorization shared by all columns of B. Throws NumericalError if the
/// factorization detects a non-PD matrix (impossible for sigma2 > 0; would
/// signal corrupted inputs).
Eigen::MatrixXcd solve_hpd(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

/// MR direction: the channel view itself. A zero channel yields a zero
/// direction; normalization decides what to do with it.
inline Eigen::VectorXcd mr_direction(const Eigen::VectorXcd& h_view) { return h_view; }

/// MMSE directions for one processing block.
///
/// H holds the block channel views of all UEs as columns (dim x K_T).
/// Column k of the result is
///   p_k (sum_i p_i h_i h_i^H + sigma2 I)^{-1} h_k,
/// computed with a single factorization and K_T solves. The block dimension
/// selects the architecture: the whole network (N*L_T), one cluster (L*N),
/// or one AP (N).
Eigen::MatrixXcd mmse_directions(const Eigen::Ref<const Eigen::MatrixXcd>& H,
                                 const Eigen::VectorXd& p_ul_mw, double sigma2_mw);

/// Number of independent precoding blocks the architecture splits the
/// stacked channel into: 1 (centralized), M (cluster-based), L_T (distributed).
int processing_blocks(const NetworkConfig& cfg, Architecture arch);

/// Raw (unnormalized) directions for one realization, stacked across the
/// whole network: column k is UE k's precoder over all AP antennas, with
/// each block of rows computed independently.
Eigen::MatrixXcd raw_directions(const Eigen::MatrixXcd& h_stacked, PrecoderType prec,
                                int n_blocks, const Eigen::VectorXd& p_ul_mw,
                                double sigma2_mw);

/// Equal-split power allocation. Each of the architecture's blocks spends
/// its full budget (#APs-in-block * P_ap), divided evenly over the K_T UEs,
/// so all three architectures radiate the same network total L_T * P_ap.
struct PowerPolicy {
  Architecture arch;
  Eigen::VectorXd rho_mw;  // power per (UE, block)
};
PowerPolicy allocate_power(const NetworkConfig& cfg, Architecture arch);

/// Normalizes one vector slot across its realization batch:
///   w_r = sqrt(rho) * wbar_r / sqrt(mean_r ||wbar_r||^2).
/// The normalizer is the batch sample mean, shared by every realization, so
/// the batch mean of ||w||^2 equals rho identically.
/// Throws DegenerateChannelError if the whole batch is zero.
std::vector<Eigen::VectorXcd> normalize(const std::vector<Eigen::VectorXcd>& raw_batch,
                                        double rho_mw);

struct NormalizeStats {
  double max_rel_power_err = 0.0;  // max over slots of |mean||w||^2 / rho - 1|
  int zero_slots = 0;              // (UE, block) slots left as zero precoders
};

/// Blocked, in-place version over a whole realization batch of stacked
/// direction matrices. Each (UE, block) slot is normalized independently.
/// A slot whose batch is all-zero (large-scale gain underflow) becomes a
/// zero precoder with zero spent power; if every slot is zero the batch is
/// degenerate and this throws.
NormalizeStats normalize_blocked_in_place(std::vector<Eigen::MatrixXcd>& batch,
                                          int n_blocks, const Eigen::VectorXd& rho_mw);

/// One realization's normalized precoders plus the power map that produced
/// them; what the SINR accumulator consumes.
struct PrecoderSet {
  Architecture arch = Architecture::kCentralized;
  int n_blocks = 1;
  Eigen::MatrixXcd w;      // stacked (N*L_T) x K_T
  Eigen::VectorXd rho_mw;  // per (UE, block)
};

}  // namespace cfsim
