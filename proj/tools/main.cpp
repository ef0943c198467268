#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfsim/checks.hpp"
#include "cfsim/config_io.hpp"
#include "cfsim/errors.hpp"
#include "cfsim/harness.hpp"

namespace {

struct RunOptions {
  std::string config_path;
  std::string preset;
  std::vector<std::string> archs;
  std::vector<std::string> precoders;
  std::vector<std::string> grids;
  int setups = -1;
  int realizations = -1;
  long long seed = -1;
  int workers = -1;
  std::string out_dir = "results";
};

cfsim::ExperimentPlan make_plan(const RunOptions& opt) {
  cfsim::ExperimentPlan plan;
  if (!opt.config_path.empty()) plan = cfsim::parse_config(opt.config_path);
  if (!opt.preset.empty()) cfsim::apply_preset(plan, opt.preset);
  if (!opt.archs.empty()) {
    plan.architectures.clear();
    for (const auto& a : opt.archs) {
      plan.architectures.push_back(cfsim::architecture_from_string(a));
    }
  }
  if (!opt.precoders.empty()) {
    plan.precoders.clear();
    for (const auto& p : opt.precoders) {
      plan.precoders.push_back(cfsim::precoder_from_string(p));
    }
  }
  if (!opt.grids.empty()) {
    plan.grids.clear();
    for (const auto& g : opt.grids) plan.grids.push_back(cfsim::grid_from_string(g));
  }
  if (opt.setups > 0) plan.cfg.num_setups = opt.setups;
  if (opt.realizations > 0) plan.cfg.num_realizations = opt.realizations;
  if (opt.seed >= 0) plan.cfg.seed = static_cast<std::uint64_t>(opt.seed);
  if (opt.workers >= 0) plan.workers = opt.workers;
  plan.validate();
  return plan;
}

int cmd_run(const RunOptions& opt) {
  const cfsim::ExperimentPlan plan = make_plan(opt);
  std::printf("running %d setups x %d realizations, seed %llu\n", plan.cfg.num_setups,
              plan.cfg.num_realizations,
              static_cast<unsigned long long>(plan.cfg.seed));
  const cfsim::RunResult result = cfsim::run(plan);

  std::printf("\n%-12s %-5s %-6s %10s %10s %10s\n", "architecture", "prec", "grid",
              "median", "mean", "p10");
  for (const auto& e : result.entries) {
    std::printf("%-12s %-5s %-6s %10.3f %10.3f %10.3f\n", cfsim::to_string(e.arch).c_str(),
                cfsim::to_string(e.precoder).c_str(), e.grid.label().c_str(),
                e.report.median, e.report.mean, e.report.p10);
  }
  std::printf("\n%s", cfsim::format_complexity_table(result.complexity).c_str());

  const cfsim::RunManifest manifest = cfsim::write_results(result, plan, opt.out_dir);
  std::printf("\nwrote %zu files to %s (manifest.json has the list)\n",
              manifest.files.size(), opt.out_dir.c_str());
  return 0;
}

int cmd_complexity(const std::string& config_path, std::vector<int> clusters,
                   const std::string& out_dir) {
  cfsim::ExperimentPlan plan;
  if (!config_path.empty()) plan = cfsim::parse_config(config_path);
  if (clusters.empty()) {
    for (int m : {1, 2, 4, 8, 16}) {
      if (plan.cfg.num_aps % m == 0) clusters.push_back(m);
    }
  }
  const auto rows = cfsim::ratio_table(plan.cfg, clusters);
  std::printf("%s", cfsim::format_complexity_table(rows).c_str());
  std::printf("distributed  %12lld\n",
              static_cast<long long>(cfsim::count_distributed(
                  plan.cfg.antennas_per_ap, plan.cfg.num_aps, plan.cfg.num_ues)));
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw cfsim::IoError("cannot create output directory '" + out_dir + "'");
    std::ofstream out(std::filesystem::path(out_dir) / "complexity.csv", std::ios::binary);
    if (!out) throw cfsim::IoError("cannot write complexity.csv in '" + out_dir + "'");
    out << cfsim::complexity_csv(rows);
    std::printf("wrote complexity.csv to %s\n", out_dir.c_str());
  }
  return 0;
}

int cmd_check(long long seed, int instances) {
  const auto lines = cfsim::run_invariant_checks(static_cast<std::uint64_t>(seed), instances);
  int failures = 0;
  for (const auto& line : lines) {
    std::printf("[%s] %s (%s)\n", line.pass ? "ok" : "FAIL", line.name.c_str(),
                line.detail.c_str());
    if (!line.pass) ++failures;
  }
  return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cell-free massive MIMO downlink Monte Carlo simulator"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "full Monte Carlo experiment");
  run->add_option("--config", run_opt.config_path, "key = value config file");
  run->add_option("--arch", run_opt.archs, "centralized|distributed|cluster (repeatable)");
  run->add_option("--precoder", run_opt.precoders, "mr|mmse (repeatable)");
  run->add_option("--grid", run_opt.grids, "cluster grid ROWSxCOLS (repeatable)");
  run->add_option("--setups", run_opt.setups, "number of random deployments");
  run->add_option("--realizations", run_opt.realizations, "channel realizations per setup");
  run->add_option("--seed", run_opt.seed, "RNG seed");
  run->add_option("--workers", run_opt.workers, "worker threads (0 = all cores)");
  run->add_option("--out", run_opt.out_dir, "output directory (default: results)");
  run->add_option("--preset", run_opt.preset, "desk|paper run profile");

  std::string cx_config, cx_out;
  std::vector<int> cx_clusters;
  auto* cx = app.add_subcommand("complexity", "analytic complexity table only");
  cx->add_option("--config", cx_config, "key = value config file");
  cx->add_option("--clusters", cx_clusters, "cluster counts (default 1 2 4 8 16)");
  cx->add_option("--out", cx_out, "also write complexity.csv here");

  long long check_seed = 1;
  int check_instances = 50;
  auto* check = app.add_subcommand("check", "invariant / degeneracy suite");
  check->add_option("--seed", check_seed, "RNG seed");
  check->add_option("--instances", check_instances, "random instances per degeneracy check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_opt);
    if (cx->parsed()) return cmd_complexity(cx_config, cx_clusters, cx_out);
    if (check->parsed()) return cmd_check(check_seed, check_instances);
  } catch (const cfsim::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const cfsim::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
