#include "cfsim/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cfsim/channel.hpp"
#include "cfsim/complexity.hpp"
#include "cfsim/harness.hpp"
#include "cfsim/topology.hpp"

namespace cfsim {

namespace {

double rel_err(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const double ref = std::max(b.norm(), 1e-300);
  return (a - b).norm() / ref;
}

double rel_err(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double ref = std::max(b.norm(), 1e-300);
  return (a - b).norm() / ref;
}

NetworkConfig small_instance(Stream& s) {
  NetworkConfig cfg;
  cfg.area_side_m = 400.0;
  cfg.antennas_per_ap = 1 + static_cast<int>(s.raw() % 2);  // N <= 2
  cfg.num_aps = 1 + static_cast<int>(s.raw() % 8);          // L_T <= 8
  cfg.num_ues = 1 + static_cast<int>(s.raw() % 4);          // K_T <= 4
  cfg.grid = ClusterGrid{1, 1};
  cfg.num_setups = 1;
  cfg.num_realizations = 6;
  return cfg;
}

std::vector<ChannelRealization> draw_batch(const NetworkConfig& cfg, std::uint64_t seed,
                                           std::uint64_t instance) {
  Stream placement = split_stream(seed, instance, StreamPurpose::kPlacement);
  const Deployment dep = build_deployment(cfg, placement);
  Stream shadow = split_stream(seed, instance, StreamPurpose::kShadowing);
  const LargeScale ls = large_scale(dep, cfg, shadow);
  std::vector<ChannelRealization> batch;
  batch.reserve(cfg.num_realizations);
  for (int r = 0; r < cfg.num_realizations; ++r) {
    Stream ch = split_stream(seed, instance, StreamPurpose::kChannel, r);
    batch.push_back(draw_realization(ls, cfg, ch));
  }
  return batch;
}

void compare_archs(const NetworkConfig& cfg, Architecture a, Architecture b,
                   const std::vector<ChannelRealization>& batch, double& precoder_err,
                   double& sinr_err) {
  for (PrecoderType prec : {PrecoderType::kMr, PrecoderType::kMmse}) {
    const ArchEvaluation ea = evaluate_architecture(cfg, a, prec, batch);
    const ArchEvaluation eb = evaluate_architecture(cfg, b, prec, batch);
    for (std::size_t r = 0; r < ea.w.size(); ++r) {
      precoder_err = std::max(precoder_err, rel_err(ea.w[r], eb.w[r]));
    }
    sinr_err = std::max(sinr_err, rel_err(ea.sinr, eb.sinr));
  }
}

}  // namespace

double DegeneracySummary::worst() const {
  return std::max(std::max(max_precoder_err_m1, max_sinr_err_m1),
                  std::max(max_precoder_err_l1, max_sinr_err_l1));
}

DegeneracySummary degeneracy_check(std::uint64_t seed, int instances) {
  DegeneracySummary sum;
  sum.instances = instances;
  for (int i = 0; i < instances; ++i) {
    Stream dims = split_stream(seed, 1000 + i, StreamPurpose::kPlacement);
    NetworkConfig cfg = small_instance(dims);

    // One cluster spanning the network vs. the centralized solver.
    cfg.grid = ClusterGrid{1, 1};
    auto batch = draw_batch(cfg, seed, 2 * i);
    compare_archs(cfg, Architecture::kClusterBased, Architecture::kCentralized, batch,
                  sum.max_precoder_err_m1, sum.max_sinr_err_m1);

    // Single-AP clusters vs. the distributed solver.
    cfg.grid = ClusterGrid{cfg.num_aps, 1};
    batch = draw_batch(cfg, seed, 2 * i + 1);
    compare_archs(cfg, Architecture::kClusterBased, Architecture::kDistributed, batch,
                  sum.max_precoder_err_l1, sum.max_sinr_err_l1);
  }
  return sum;
}

namespace {

CheckLine check_reshape(std::uint64_t seed) {
  NetworkConfig cfg;
  cfg.num_aps = 6;
  cfg.num_ues = 3;
  cfg.antennas_per_ap = 2;
  cfg.grid = ClusterGrid{3, 1};
  cfg.num_realizations = 2;
  auto batch = draw_batch(cfg, seed, 7000);
  double err = 0.0;
  const auto& cr = batch.front();
  for (int k = 0; k < cfg.num_ues; ++k) {
    Eigen::VectorXcd stacked(cr.h.rows());
    Eigen::Index at = 0;
    for (int m = 0; m < cfg.num_clusters(); ++m) {
      const auto v = cr.view_cluster(k, m);
      stacked.segment(at, v.size()) = v;
      at += v.size();
    }
    const Eigen::VectorXcd whole = cr.view_centralized(k);
    err = std::max(err, (stacked - whole).norm());
    for (int q = 0; q < cfg.num_aps; ++q) {
      const Eigen::VectorXcd slice = whole.segment(
          static_cast<Eigen::Index>(q) * cfg.antennas_per_ap, cfg.antennas_per_ap);
      err = std::max(err, (slice - cr.view_distributed(k, q)).norm());
    }
  }
  std::ostringstream detail;
  detail << "max abs deviation " << err;
  return CheckLine{"channel reshape consistency", err == 0.0, detail.str()};
}

CheckLine check_normalization(std::uint64_t seed) {
  NetworkConfig cfg;
  cfg.num_aps = 8;
  cfg.num_ues = 4;
  cfg.antennas_per_ap = 2;
  cfg.grid = ClusterGrid{2, 2};
  cfg.num_realizations = 12;
  auto batch = draw_batch(cfg, seed, 7100);
  double worst = 0.0;
  for (Architecture arch : {Architecture::kCentralized, Architecture::kDistributed,
                            Architecture::kClusterBased}) {
    for (PrecoderType prec : {PrecoderType::kMr, PrecoderType::kMmse}) {
      worst = std::max(worst, evaluate_architecture(cfg, arch, prec, batch).max_rel_power_err);
    }
  }
  std::ostringstream detail;
  detail << "max |mean power / rho - 1| = " << worst;
  return CheckLine{"normalization identity", worst <= 1e-12, detail.str()};
}

CheckLine check_complexity_identities() {
  bool ok = true;
  std::ostringstream detail;
  for (int n : {1, 2, 4}) {
    for (int lt : {6, 96}) {
      for (int ues : {1, 40}) {
        const auto cent = count_centralized(n, lt, 1, ues);
        if (count_cluster(n, lt, 1, ues) != cent) ok = false;
        if (count_cluster(n, 1, lt, ues) != count_distributed(n, lt, ues)) ok = false;
      }
    }
  }
  detail << (ok ? "M=1 and L=1 identities hold" : "identity violated");
  return CheckLine{"complexity degeneracy identities", ok, detail.str()};
}

}  // namespace

std::vector<CheckLine> run_invariant_checks(std::uint64_t seed, int instances) {
  std::vector<CheckLine> lines;

  const DegeneracySummary deg = degeneracy_check(seed, instances);
  {
    std::ostringstream detail;
    detail << instances << " instances, max rel err " << std::max(deg.max_precoder_err_m1,
                                                                  deg.max_sinr_err_m1);
    lines.push_back(CheckLine{"cluster(M=1) == centralized",
                              std::max(deg.max_precoder_err_m1, deg.max_sinr_err_m1) <= 1e-9,
                              detail.str()});
  }
  {
    std::ostringstream detail;
    detail << instances << " instances, max rel err " << std::max(deg.max_precoder_err_l1,
                                                                  deg.max_sinr_err_l1);
    lines.push_back(CheckLine{"cluster(L=1) == distributed",
                              std::max(deg.max_precoder_err_l1, deg.max_sinr_err_l1) <= 1e-9,
                              detail.str()});
  }
  lines.push_back(check_reshape(seed));
  lines.push_back(check_normalization(seed));
  lines.push_back(check_complexity_identities());
  return lines;
}

}  // namespace cfsim
