#include "cfsim/config_io.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cfsim/errors.hpp"

namespace cfsim {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& value, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected a number, got '" + value + "'");
  }
}

long long parse_int(const std::string& value, const std::string& where) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected an integer, got '" + value + "'");
  }
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string iso_utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void apply_key(ExperimentPlan& plan, const std::string& key, const std::string& value,
               const std::string& where) {
  NetworkConfig& cfg = plan.cfg;
  if (key == "area_side") {
    cfg.area_side_m = parse_double(value, where);
    if (cfg.area_side_m <= 0) throw ConfigError(where + ": area_side must be > 0");
  } else if (key == "bandwidth_hz") {
    cfg.bandwidth_hz = parse_double(value, where);
  } else if (key == "num_aps") {
    cfg.num_aps = static_cast<int>(parse_int(value, where));
  } else if (key == "num_ues") {
    cfg.num_ues = static_cast<int>(parse_int(value, where));
  } else if (key == "antennas_per_ap") {
    cfg.antennas_per_ap = static_cast<int>(parse_int(value, where));
  } else if (key == "ap_power_mw") {
    cfg.ap_power_mw = parse_double(value, where);
    if (cfg.ap_power_mw <= 0) throw ConfigError(where + ": ap_power_mw must be > 0");
  } else if (key == "noise_dbm") {
    cfg.noise_dbm = parse_double(value, where);
  } else if (key == "shadow_std_db") {
    cfg.shadow_std_db = parse_double(value, where);
    if (cfg.shadow_std_db < 0) throw ConfigError(where + ": shadow_std_db must be >= 0");
  } else if (key == "ul_power_mw") {
    cfg.ul_power_mw = parse_double(value, where);
    if (cfg.ul_power_mw <= 0) throw ConfigError(where + ": ul_power_mw must be > 0");
  } else if (key == "ap_height") {
    cfg.ap_height_m = parse_double(value, where);
    if (cfg.ap_height_m <= 0) throw ConfigError(where + ": ap_height must be > 0");
  } else if (key == "setups") {
    cfg.num_setups = static_cast<int>(parse_int(value, where));
  } else if (key == "realizations") {
    cfg.num_realizations = static_cast<int>(parse_int(value, where));
  } else if (key == "seed") {
    const long long v = parse_int(value, where);
    if (v < 0) throw ConfigError(where + ": seed must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(v);
  } else if (key == "workers") {
    plan.workers = static_cast<int>(parse_int(value, where));
  } else if (key == "grids") {
    plan.grids.clear();
    for (const auto& g : split_list(value)) {
      try {
        plan.grids.push_back(grid_from_string(g));
      } catch (const ConfigError& e) {
        throw ConfigError(where + ": " + e.what());
      }
    }
    if (plan.grids.empty()) throw ConfigError(where + ": empty grid list");
  } else if (key == "architectures") {
    plan.architectures.clear();
    for (const auto& a : split_list(value)) {
      try {
        plan.architectures.push_back(architecture_from_string(a));
      } catch (const ConfigError& e) {
        throw ConfigError(where + ": " + e.what());
      }
    }
    if (plan.architectures.empty()) throw ConfigError(where + ": empty architecture list");
  } else if (key == "precoders") {
    plan.precoders.clear();
    for (const auto& p : split_list(value)) {
      try {
        plan.precoders.push_back(precoder_from_string(p));
      } catch (const ConfigError& e) {
        throw ConfigError(where + ": " + e.what());
      }
    }
    if (plan.precoders.empty()) throw ConfigError(where + ": empty precoder list");
  } else {
    throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

}  // namespace

ExperimentPlan parse_config_text(const std::string& text, const std::string& origin) {
  ExperimentPlan plan;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected 'key = value', got '" + stripped + "'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": missing key");
    apply_key(plan, key, value, where);
  }
  try {
    plan.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return plan;
}

ExperimentPlan parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string serialize_plan(const ExperimentPlan& plan) {
  const NetworkConfig& c = plan.cfg;
  std::ostringstream out;
  out << "area_side = " << format_double(c.area_side_m) << "\n";
  out << "bandwidth_hz = " << format_double(c.bandwidth_hz) << "\n";
  out << "num_aps = " << c.num_aps << "\n";
  out << "num_ues = " << c.num_ues << "\n";
  out << "antennas_per_ap = " << c.antennas_per_ap << "\n";
  out << "ap_power_mw = " << format_double(c.ap_power_mw) << "\n";
  out << "noise_dbm = " << format_double(c.noise_dbm) << "\n";
  out << "shadow_std_db = " << format_double(c.shadow_std_db) << "\n";
  out << "ul_power_mw = " << format_double(c.ul_power_mw) << "\n";
  out << "ap_height = " << format_double(c.ap_height_m) << "\n";
  out << "setups = " << c.num_setups << "\n";
  out << "realizations = " << c.num_realizations << "\n";
  out << "seed = " << c.seed << "\n";
  out << "workers = " << plan.workers << "\n";
  out << "architectures = ";
  for (std::size_t i = 0; i < plan.architectures.size(); ++i) {
    out << (i ? "," : "") << to_string(plan.architectures[i]);
  }
  out << "\n";
  out << "precoders = ";
  for (std::size_t i = 0; i < plan.precoders.size(); ++i) {
    out << (i ? "," : "") << to_string(plan.precoders[i]);
  }
  out << "\n";
  out << "grids = ";
  for (std::size_t i = 0; i < plan.grids.size(); ++i) {
    out << (i ? "," : "") << plan.grids[i].label();
  }
  out << "\n";
  return out.str();
}

void apply_preset(ExperimentPlan& plan, const std::string& preset) {
  if (preset == "paper") {
    plan.cfg.num_setups = 100;
    plan.cfg.num_realizations = 300;
  } else if (preset == "desk") {
    plan.cfg.num_setups = 20;
    plan.cfg.num_realizations = 100;
  } else {
    throw ConfigError("unknown preset '" + preset + "' (expected desk|paper)");
  }
}

std::string format_complexity_table(const std::vector<ComplexityReport>& rows) {
  std::ostringstream out;
  char buf[64];
  out << "clusters     ";
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, " %12d", r.clusters);
    out << buf;
  }
  out << "\ncentralized  ";
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, " %12lld", static_cast<long long>(r.centralized_count));
    out << buf;
  }
  out << "\ncluster_based";
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, " %12lld", static_cast<long long>(r.count));
    out << buf;
  }
  out << "\nratio        ";
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, " %12.3f", r.ratio_to_centralized.value());
    out << buf;
  }
  out << "\n";
  return out.str();
}

std::string complexity_csv(const std::vector<ComplexityReport>& rows) {
  std::string csv = "clusters,centralized,cluster_based,ratio\n";
  char buf[96];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%d,%lld,%lld,%.3f\n", row.clusters,
                  static_cast<long long>(row.centralized_count),
                  static_cast<long long>(row.count), row.ratio_to_centralized.value());
    csv += buf;
  }
  return csv;
}

namespace {

std::string csv_name(const RunResult::Entry& e) {
  return "se_" + to_string(e.arch) + "_" + to_string(e.precoder) + "_" + e.grid.label() +
         ".csv";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::vector<std::string> config_echo_lines(const ExperimentPlan& plan) {
  // The worker count is an execution detail, not part of the experiment:
  // identical (config, seed) must serialize identically at any concurrency.
  ExperimentPlan canonical = plan;
  canonical.workers = 0;
  std::vector<std::string> lines;
  std::istringstream in(serialize_plan(canonical));
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

RunManifest write_results(const RunResult& result, const ExperimentPlan& plan,
                          const std::string& out_dir) {
  RunManifest manifest;
  manifest.version = std::string(kVersion);
  manifest.seed = plan.cfg.seed;
  manifest.started_at = iso_utc_now();

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
  const std::filesystem::path dir(out_dir);

  char buf[96];
  for (const auto& entry : result.entries) {
    std::string csv = "se_bits_per_hz,cdf\n";
    for (std::size_t i = 0; i < entry.report.samples.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.10g,%.10g\n", entry.report.samples[i],
                    entry.report.cdf[i]);
      csv += buf;
    }
    const std::string name = csv_name(entry);
    write_file(dir / name, csv);
    manifest.files.push_back(name);
  }

  write_file(dir / "complexity.csv", complexity_csv(result.complexity));
  manifest.files.push_back("complexity.csv");

  {
    nlohmann::json summary;
    summary["config"] = config_echo_lines(plan);
    summary["max_normalization_err"] = result.max_normalization_err;
    summary["zero_precoder_slots"] = result.zero_precoder_slots;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& entry : result.entries) {
      nlohmann::json e;
      e["architecture"] = to_string(entry.arch);
      e["precoder"] = to_string(entry.precoder);
      e["grid"] = entry.grid.label();
      e["clusters"] = entry.grid.clusters();
      e["samples"] = entry.report.samples.size();
      e["median_se"] = entry.report.median;
      e["mean_se"] = entry.report.mean;
      e["p10_se"] = entry.report.p10;
      entries.push_back(e);
    }
    summary["results"] = entries;
    write_file(dir / "summary.json", summary.dump(2) + "\n");
    manifest.files.push_back("summary.json");
  }

  manifest.finished_at = iso_utc_now();
  {
    nlohmann::json j;
    j["version"] = manifest.version;
    j["seed"] = manifest.seed;
    j["started_at"] = manifest.started_at;
    j["finished_at"] = manifest.finished_at;
    j["config"] = config_echo_lines(plan);
    j["files"] = manifest.files;
    write_file(dir / "manifest.json", j.dump(2) + "\n");
  }
  return manifest;
}

}  // namespace cfsim
