#include "cfsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "cfsim/errors.hpp"
#include "cfsim/topology.hpp"

namespace cfsim {

void ExperimentPlan::validate() const {
  if (architectures.empty()) throw ConfigError("plan selects no architecture");
  if (precoders.empty()) throw ConfigError("plan selects no precoder");
  if (grids.empty()) throw ConfigError("plan selects no cluster grid");
  if (workers < 0) throw ConfigError("workers must be >= 0");
  for (const auto& g : grids) {
    NetworkConfig c = cfg;
    c.grid = g;
    c.validate();
  }
}

ArchEvaluation evaluate_architecture(const NetworkConfig& cfg, Architecture arch,
                                     PrecoderType prec,
                                     const std::vector<ChannelRealization>& realizations) {
  if (realizations.empty()) throw NumericalError("evaluate_architecture: no realizations");
  const int n_blocks = processing_blocks(cfg, arch);
  const PowerPolicy policy = allocate_power(cfg, arch);
  const Eigen::VectorXd p_ul = Eigen::VectorXd::Constant(cfg.num_ues, cfg.ul_power_mw);
  const double sigma2 = cfg.noise_mw();

  ArchEvaluation ev;
  ev.w.reserve(realizations.size());
  for (const auto& ch : realizations) {
    ev.w.push_back(raw_directions(ch.h, prec, n_blocks, p_ul, sigma2));
  }

  const NormalizeStats norm = normalize_blocked_in_place(ev.w, n_blocks, policy.rho_mw);
  ev.max_rel_power_err = norm.max_rel_power_err;
  ev.zero_slots = norm.zero_slots;

  SinrAccumulator acc(cfg.num_ues);
  for (std::size_t r = 0; r < realizations.size(); ++r) {
    acc.add_realization(realizations[r].h.adjoint() * ev.w[r]);
  }
  ev.sinr = finalize_sinr(acc, sigma2);
  ev.se = ev.sinr.unaryExpr([](double s) { return se_from_sinr(s); });
  return ev;
}

const SEReport* RunResult::find(const ClusterGrid& grid, Architecture arch,
                                PrecoderType prec) const {
  for (const auto& e : entries) {
    if (e.grid == grid && e.arch == arch && e.precoder == prec) return &e.report;
  }
  return nullptr;
}

namespace {

std::vector<int> complexity_sweep(const ExperimentPlan& plan) {
  std::vector<int> sweep;
  for (int m : {1, 2, 4, 8, 16}) {
    if (plan.cfg.num_aps % m == 0) sweep.push_back(m);
  }
  for (const auto& g : plan.grids) {
    const int m = g.clusters();
    if (std::find(sweep.begin(), sweep.end(), m) == sweep.end()) sweep.push_back(m);
  }
  std::sort(sweep.begin(), sweep.end());
  return sweep;
}

}  // namespace

RunResult run(const ExperimentPlan& plan) {
  plan.validate();
  const NetworkConfig& cfg = plan.cfg;
  const int n_grids = static_cast<int>(plan.grids.size());
  const int n_archs = static_cast<int>(plan.architectures.size());
  const int n_precs = static_cast<int>(plan.precoders.size());
  const int n_setups = cfg.num_setups;

  // samples[grid][arch][prec][setup] -> per-UE SE; slots are disjoint across
  // tasks, so workers write without locks and pooling order is fixed.
  const auto combo = [&](int g, int a, int p) { return (g * n_archs + a) * n_precs + p; };
  std::vector<std::vector<Eigen::VectorXd>> samples(
      static_cast<std::size_t>(n_grids) * n_archs * n_precs,
      std::vector<Eigen::VectorXd>(n_setups));
  std::vector<double> norm_err_by_task(static_cast<std::size_t>(n_grids) * n_setups, 0.0);
  std::vector<long> zero_slots_by_task(static_cast<std::size_t>(n_grids) * n_setups, 0);

  std::atomic<std::size_t> next_task{0};
  const std::size_t n_tasks = static_cast<std::size_t>(n_grids) * n_setups;
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    while (true) {
      const std::size_t task = next_task.fetch_add(1);
      if (task >= n_tasks) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error) return;
      }
      const int g = static_cast<int>(task / n_setups);
      const int s = static_cast<int>(task % n_setups);
      try {
        NetworkConfig gcfg = cfg;
        gcfg.grid = plan.grids[g];

        Stream placement = split_stream(cfg.seed, s, StreamPurpose::kPlacement);
        const Deployment dep = build_deployment(gcfg, placement);
        Stream shadowing = split_stream(cfg.seed, s, StreamPurpose::kShadowing);
        const LargeScale ls = large_scale(dep, gcfg, shadowing);

        std::vector<ChannelRealization> realizations;
        realizations.reserve(gcfg.num_realizations);
        for (int r = 0; r < gcfg.num_realizations; ++r) {
          Stream ch_stream = split_stream(cfg.seed, s, StreamPurpose::kChannel, r);
          realizations.push_back(draw_realization(ls, gcfg, ch_stream));
        }

        for (int a = 0; a < n_archs; ++a) {
          for (int p = 0; p < n_precs; ++p) {
            ArchEvaluation ev = evaluate_architecture(gcfg, plan.architectures[a],
                                                      plan.precoders[p], realizations);
            samples[combo(g, a, p)][s] = std::move(ev.se);
            auto& err = norm_err_by_task[static_cast<std::size_t>(g) * n_setups + s];
            err = std::max(err, ev.max_rel_power_err);
            zero_slots_by_task[static_cast<std::size_t>(g) * n_setups + s] += ev.zero_slots;
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          try {
            throw;
          } catch (const std::exception& e) {
            first_error = std::make_exception_ptr(NumericalError(
                "setup " + std::to_string(s) + ", grid " + plan.grids[g].label() + ": " +
                e.what()));
          } catch (...) {
            first_error = std::current_exception();
          }
        }
        return;
      }
    }
  };

  int n_workers = plan.workers > 0 ? plan.workers
                                   : static_cast<int>(std::thread::hardware_concurrency());
  if (n_workers < 1) n_workers = 1;
  n_workers = std::min<std::size_t>(n_workers, n_tasks);
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  RunResult result;
  for (int g = 0; g < n_grids; ++g) {
    for (int a = 0; a < n_archs; ++a) {
      for (int p = 0; p < n_precs; ++p) {
        std::vector<double> pooled;
        pooled.reserve(static_cast<std::size_t>(n_setups) * cfg.num_ues);
        for (int s = 0; s < n_setups; ++s) {
          const Eigen::VectorXd& se = samples[combo(g, a, p)][s];
          pooled.insert(pooled.end(), se.data(), se.data() + se.size());
        }
        result.entries.push_back(RunResult::Entry{plan.grids[g], plan.architectures[a],
                                                  plan.precoders[p],
                                                  aggregate_cdf(std::move(pooled))});
      }
    }
  }
  for (double e : norm_err_by_task) {
    result.max_normalization_err = std::max(result.max_normalization_err, e);
  }
  for (long z : zero_slots_by_task) result.zero_precoder_slots += z;
  result.complexity = ratio_table(cfg, complexity_sweep(plan));
  return result;
}

}  // namespace cfsim
