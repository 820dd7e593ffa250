#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epr/scenarios.hpp"

namespace epr {

inline constexpr const char* kToolName = "epr-tradeoff";
inline constexpr const char* kToolVersion = "1.0.0";

/// Fixed 9-significant-digit scientific formatting ("%.8e"). Every numeric
/// CSV field goes through this so fixture files are byte-stable.
std::string format_sci(double value);

/// Current UTC time as ISO 8601 (e.g. "2024-05-01T12:00:00Z").
std::string utc_timestamp();

/// One output file, rendered in memory so tests can assert on bytes without
/// touching the filesystem.
struct OutputFile {
  std::string name;  // basename, no directory
  std::string content;
};

/// Everything the command-line front end needs to run one scenario command.
/// The "bounds" scenario ignores n_shots/repeats/mode (curves are analytic).
struct CommandOptions {
  std::string scenario;  // "error-free", "nonzero", "mixed", "bounds"
  SqueezingSpec spec = SqueezingSpec::impure(-2.9, 3.9);
  std::vector<double> grid;  // degrees for error-free, transmission otherwise
  Eigen::Index n_shots = kDefaultShots;
  int repeats = 10;
  std::uint64_t seed = 12345;
  RunMode mode = RunMode::kAnalytic;
  bool svg = false;

  void validate() const;
};

const char* run_mode_name(RunMode mode);
RunMode run_mode_from_name(const std::string& name);

/// Grid flag syntax: either a comma list "0,30,60" or an inclusive range
/// "start:step:stop" expanded through make_grid().
std::vector<double> parse_grid_spec(const std::string& text);

/// CSV for a scan: one row per grid point. Columns are the parameter, the
/// four analytic statistics, c_ab and the three relation left-hand sides;
/// when Monte Carlo ran, a (mc_*, mc_spread_*) pair per statistic follows.
std::string scan_csv(const ScenarioResult& result);

/// CSV of the bound curves, one row per curve sample:
/// relation,sigma_variant,eps_a,eps_b.
std::string bounds_curves_csv(const BoundsPlane& plane);

/// CSV of the scan overlay points: scenario,parameter,eps_a,eps_b.
std::string bounds_points_csv(const BoundsPlane& plane);

/// JSON run manifest with a stable key order. Re-running through
/// options_from_manifest() regenerates byte-identical data files; the
/// timestamp and command line are echo fields and take no part in that.
std::string manifest_json(const CommandOptions& options,
                          const std::string& command_line,
                          const std::string& timestamp,
                          const std::vector<std::string>& output_names);

CommandOptions options_from_manifest(const std::string& manifest_text);

/// Two stacked panels: errors vs the scan parameter on top, the three
/// relation left-hand sides plus the c_ab reference line below. Monte Carlo
/// estimates, when present, are drawn as markers with spread bars.
std::string scan_svg(const ScenarioResult& result);

/// Single panel of the bound curves in the (eps_a, eps_b) plane with the
/// scan operating points overlaid.
std::string bounds_svg(const BoundsPlane& plane);

/// Runs the scenario named by options and renders every output file
/// (CSV data, manifest, optional SVG) in memory.
std::vector<OutputFile> render_command(const CommandOptions& options,
                                       const std::string& command_line,
                                       const std::string& timestamp);

/// Writes rendered files under out_dir, creating the directory if needed.
void write_files(const std::vector<OutputFile>& files, const std::string& out_dir);

}  // namespace epr
