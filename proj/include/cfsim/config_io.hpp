#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cfsim/harness.hpp"

namespace cfsim {

inline constexpr std::string_view kVersion = "1.0.0";

/// Parses a `key = value` config file ('#' comments, blank lines allowed).
/// Omitted keys keep the reference defaults. Unknown keys, non-dividing
/// grids and non-positive powers are rejected with a line/key diagnostic.
ExperimentPlan parse_config(const std::string& path);

/// Same grammar, from memory (used by parse_config and the round-trip tests).
ExperimentPlan parse_config_text(const std::string& text, const std::string& origin = "<string>");

/// Emits the full plan in the config grammar; parse_config_text inverts it.
std::string serialize_plan(const ExperimentPlan& plan);

/// Applies a named run profile: "paper" (100 setups x 300 realizations) or
/// "desk" (20 x 100, the quick profile).
void apply_preset(ExperimentPlan& plan, const std::string& preset);

/// What write_results produced: one referenced path per emitted data file.
struct RunManifest {
  std::string version;
  std::uint64_t seed = 0;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> files;  // relative to the output directory
};

/// Writes per-(architecture, precoder, grid) CDF CSVs, the complexity table,
/// a JSON summary and manifest.json into out_dir (created if missing).
/// All files use LF line endings and a stable column order, so identical
/// results serialize byte-identically; the manifest carries wall-clock
/// timestamps and is the one file excluded from that guarantee.
RunManifest write_results(const RunResult& result, const ExperimentPlan& plan,
                          const std::string& out_dir);

/// Table-shaped complexity comparison (one column per cluster count), as
/// printed by the CLI.
std::string format_complexity_table(const std::vector<ComplexityReport>& rows);

/// The complexity table in CSV form: clusters,centralized,cluster_based,ratio.
std::string complexity_csv(const std::vector<ComplexityReport>& rows);

}  // namespace cfsim
