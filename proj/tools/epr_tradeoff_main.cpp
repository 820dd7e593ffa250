#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "epr/report.hpp"

namespace {

std::string echo_command_line(int argc, char** argv) {
  std::ostringstream os;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) os << ' ';
    const std::string arg = argv[i];
    if (arg.find(' ') != std::string::npos) {
      os << '"' << arg << '"';
    } else {
      os << arg;
    }
  }
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Error-tradeoff uncertainty relation scans on a two-mode squeezed EPR "
      "state: analytic statistics, seeded Monte Carlo, CSV/SVG reports"};
  app.set_version_flag("--version", std::string(epr::kToolVersion));

  std::string scenario;
  double r = 0.0, squeezing_db = 0.0, antisqueezing_db = 0.0;
  std::string theta_grid, t_grid;
  std::int64_t shots = epr::kDefaultShots;
  int repeats = 10;
  std::uint64_t seed = 12345;
  std::string mode = "analytic";
  std::string out_dir = ".";
  bool svg = false;
  std::string from_manifest;

  CLI::Option* scenario_opt =
      app.add_option("--scenario", scenario,
                     "Scan to run: error-free (phase scan), nonzero (lossy "
                     "readout scan), mixed (lossy state scan), bounds "
                     "(lower-bound curves)")
          ->check(CLI::IsMember({"error-free", "nonzero", "mixed", "bounds"}));
  CLI::Option* r_opt = app.add_option(
      "--r", r, "Squeezing parameter of a pure two-mode squeezed state");
  CLI::Option* sq_opt = app.add_option(
      "--squeezing-db", squeezing_db,
      "Squeezed joint-quadrature level in dB relative to vacuum (negative "
      "squeezes); default -2.9");
  CLI::Option* anti_opt = app.add_option(
      "--antisqueezing-db", antisqueezing_db,
      "Antisqueezed joint-quadrature level in dB relative to vacuum; "
      "default 3.9");
  r_opt->excludes(sq_opt)->excludes(anti_opt);
  sq_opt->needs(anti_opt);
  anti_opt->needs(sq_opt);
  CLI::Option* theta_opt = app.add_option(
      "--theta-grid", theta_grid,
      "Phase grid in degrees, \"0,30,60\" or start:step:stop; default "
      "0:30:360 (error-free only)");
  CLI::Option* t_opt = app.add_option(
      "--t-grid", t_grid,
      "Transmission grid, comma list or start:step:stop; default 0:0.1:1 "
      "(nonzero and mixed only)");
  app.add_option("--shots", shots, "Samples per Monte Carlo repeat")
      ->capture_default_str();
  app.add_option("--repeats", repeats, "Monte Carlo repeats per grid point")
      ->capture_default_str();
  app.add_option("--seed", seed, "Base seed for the sampler")
      ->capture_default_str();
  app.add_option("--mode", mode, "Statistics to compute")
      ->check(CLI::IsMember({"analytic", "mc", "both"}))
      ->capture_default_str();
  app.add_option("--out-dir", out_dir, "Directory for the output files")
      ->capture_default_str();
  app.add_flag("--svg", svg, "Also write an SVG plot next to the CSV");
  CLI::Option* manifest_opt = app.add_option(
      "--from-manifest", from_manifest,
      "Re-run from a previously written manifest, regenerating its data "
      "files");
  for (CLI::Option* opt : {scenario_opt, r_opt, sq_opt, anti_opt, theta_opt,
                           t_opt}) {
    manifest_opt->excludes(opt);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    epr::CommandOptions options;
    if (!from_manifest.empty()) {
      options = epr::options_from_manifest(read_text_file(from_manifest));
    } else {
      if (scenario.empty()) {
        throw std::invalid_argument(
            "either --scenario or --from-manifest is required");
      }
      options.scenario = scenario;
      if (r_opt->count() > 0) {
        options.spec = epr::SqueezingSpec::pure(r);
      } else if (sq_opt->count() > 0) {
        options.spec = epr::SqueezingSpec::impure(squeezing_db, antisqueezing_db);
      }
      if (theta_opt->count() > 0 && scenario != "error-free") {
        throw std::invalid_argument("--theta-grid applies to --scenario error-free");
      }
      if (t_opt->count() > 0 && scenario != "nonzero" && scenario != "mixed") {
        throw std::invalid_argument("--t-grid applies to --scenario nonzero|mixed");
      }
      if (scenario == "error-free") {
        options.grid = theta_opt->count() > 0 ? epr::parse_grid_spec(theta_grid)
                                              : epr::default_theta_grid();
      } else if (scenario == "bounds") {
        options.grid = epr::make_grid(0.0, 0.01, 1.0);
      } else {
        options.grid = t_opt->count() > 0 ? epr::parse_grid_spec(t_grid)
                                          : epr::default_t_grid();
      }
      options.n_shots = shots;
      options.repeats = repeats;
      options.seed = seed;
      options.mode = epr::run_mode_from_name(mode);
      options.svg = svg;
    }

    const std::vector<epr::OutputFile> files = epr::render_command(
        options, echo_command_line(argc, argv), epr::utc_timestamp());
    epr::write_files(files, out_dir);
    for (const epr::OutputFile& f : files) {
      std::cout << "wrote " << out_dir << '/' << f.name << '\n';
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
