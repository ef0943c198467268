#include "cfsim/precoding.hpp"

#include <cmath>

#include "cfsim/errors.hpp"

namespace cfsim {

Eigen::MatrixXcd solve_hpd(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  Eigen::LLT<Eigen::MatrixXcd> llt(A);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("Cholesky factorization failed: matrix not positive definite");
  }
  return llt.solve(B);
}

Eigen::MatrixXcd mmse_directions(const Eigen::Ref<const Eigen::MatrixXcd>& H,
                                 const Eigen::VectorXd& p_ul_mw, double sigma2_mw) {
  const Eigen::Index dim = H.rows();
  const Eigen::Index n_ues = H.cols();
  if (p_ul_mw.size() != n_ues) throw NumericalError("mmse_directions: p size mismatch");
  if (sigma2_mw <= 0) throw NumericalError("mmse_directions: sigma2 must be > 0");

  // A = sigma2 I + Hs Hs^H with Hs = H diag(sqrt(p)); only the lower
  // triangle is built, which is all the Cholesky reads.
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim, dim);
  A.diagonal().setConstant(sigma2_mw);
  const Eigen::MatrixXcd h_scaled = H * p_ul_mw.cwiseSqrt().asDiagonal();
  A.selfadjointView<Eigen::Lower>().rankUpdate(h_scaled);

  Eigen::LLT<Eigen::MatrixXcd> llt(A);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("MMSE system matrix not positive definite");
  }
  Eigen::MatrixXcd w = llt.solve(H);
  w = w * p_ul_mw.asDiagonal();
  return w;
}

int processing_blocks(const NetworkConfig& cfg, Architecture arch) {
  switch (arch) {
    case Architecture::kCentralized: return 1;
    case Architecture::kClusterBased: return cfg.num_clusters();
    case Architecture::kDistributed: return cfg.num_aps;
  }
  return 1;
}

Eigen::MatrixXcd raw_directions(const Eigen::MatrixXcd& h_stacked, PrecoderType prec,
                                int n_blocks, const Eigen::VectorXd& p_ul_mw,
                                double sigma2_mw) {
  if (prec == PrecoderType::kMr) return h_stacked;

  const Eigen::Index rows = h_stacked.rows();
  if (n_blocks < 1 || rows % n_blocks != 0) {
    throw NumericalError("raw_directions: block count does not divide the stack");
  }
  const Eigen::Index block_len = rows / n_blocks;
  Eigen::MatrixXcd w(rows, h_stacked.cols());
  for (int b = 0; b < n_blocks; ++b) {
    w.middleRows(b * block_len, block_len) =
        mmse_directions(h_stacked.middleRows(b * block_len, block_len), p_ul_mw,
                        sigma2_mw);
  }
  return w;
}

PowerPolicy allocate_power(const NetworkConfig& cfg, Architecture arch) {
  cfg.validate();
  const int n_blocks = processing_blocks(cfg, arch);
  const double aps_in_block = static_cast<double>(cfg.num_aps) / n_blocks;
  const double rho = aps_in_block * cfg.ap_power_mw / cfg.num_ues;
  PowerPolicy policy;
  policy.arch = arch;
  policy.rho_mw = Eigen::VectorXd::Constant(cfg.num_ues, rho);
  return policy;
}

std::vector<Eigen::VectorXcd> normalize(const std::vector<Eigen::VectorXcd>& raw_batch,
                                        double rho_mw) {
  if (raw_batch.empty()) throw DegenerateChannelError("normalize: empty batch");
  double mean_sq = 0.0;
  for (const auto& v : raw_batch) mean_sq += v.squaredNorm();
  mean_sq /= static_cast<double>(raw_batch.size());
  if (mean_sq == 0.0) {
    throw DegenerateChannelError("normalize: batch has no vector with positive norm");
  }
  const double scale = std::sqrt(rho_mw / mean_sq);
  std::vector<Eigen::VectorXcd> out;
  out.reserve(raw_batch.size());
  for (const auto& v : raw_batch) out.push_back(scale * v);
  return out;
}

NormalizeStats normalize_blocked_in_place(std::vector<Eigen::MatrixXcd>& batch,
                                          int n_blocks, const Eigen::VectorXd& rho_mw) {
  if (batch.empty()) throw DegenerateChannelError("normalize: empty batch");
  const Eigen::Index rows = batch.front().rows();
  const Eigen::Index n_ues = batch.front().cols();
  if (n_blocks < 1 || rows % n_blocks != 0) {
    throw NumericalError("normalize: block count does not divide the stack");
  }
  if (rho_mw.size() != n_ues) throw NumericalError("normalize: rho size mismatch");
  const Eigen::Index block_len = rows / n_blocks;
  const double n_real = static_cast<double>(batch.size());

  NormalizeStats stats;
  bool any_positive = false;
  for (Eigen::Index k = 0; k < n_ues; ++k) {
    for (int b = 0; b < n_blocks; ++b) {
      double mean_sq = 0.0;
      for (const auto& w : batch) {
        mean_sq += w.col(k).segment(b * block_len, block_len).squaredNorm();
      }
      mean_sq /= n_real;
      if (mean_sq == 0.0) {
        ++stats.zero_slots;  // zero precoder, zero spent power
        continue;
      }
      any_positive = true;
      const double scale = std::sqrt(rho_mw(k) / mean_sq);
      double mean_after = 0.0;
      for (auto& w : batch) {
        auto seg = w.col(k).segment(b * block_len, block_len);
        seg *= scale;
        mean_after += seg.squaredNorm();
      }
      mean_after /= n_real;
      if (rho_mw(k) > 0.0) {
        stats.max_rel_power_err =
            std::max(stats.max_rel_power_err, std::abs(mean_after / rho_mw(k) - 1.0));
      }
    }
  }
  if (!any_positive) {
    throw DegenerateChannelError("normalize: batch has no vector with positive norm");
  }
  return stats;
}

}  // namespace cfsim
