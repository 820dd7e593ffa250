#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "epr/estimators.hpp"
#include "epr/gaussian_state.hpp"
#include "epr/relations.hpp"
#include "epr/sampler.hpp"

namespace epr {

enum class RunMode { kAnalytic, kMonteCarlo, kBoth };

/// Scan of the relative phase between the two entangled modes, degrees in
/// [0, 360]. A is measured error-free (C = A = x1), D is the rotated p2.
struct ErrorFreeScan {
  std::vector<double> theta_deg;
};

/// Scan of the transmission of a lossy channel on the signal mode, with
/// C = x1' read after the channel while the targets stay A = x1, B = p1.
struct NonzeroErrorScan {
  std::vector<double> transmission;
};

/// Scan of the transmission with the lossy output itself as the target:
/// C = A = x1', B = p1', D = p2.
struct MixedStateScan {
  std::vector<double> transmission;
};

using ScenarioScan = std::variant<ErrorFreeScan, NonzeroErrorScan, MixedStateScan>;

std::vector<double> default_theta_grid();  // 0, 30, ..., 360 degrees
std::vector<double> default_t_grid();      // 0.0, 0.1, ..., 1.0

/// Inclusive arithmetic grid with the endpoint snapped exactly to stop.
std::vector<double> make_grid(double start, double step, double stop);

struct ScenarioConfig {
  SqueezingSpec spec = SqueezingSpec::impure(-2.9, 3.9);
  ScenarioScan scan = ErrorFreeScan{default_theta_grid()};
  Eigen::Index n_shots = kDefaultShots;
  std::uint64_t seed = 12345;
  RunMode mode = RunMode::kAnalytic;
  int repeats = 10;
  int n_threads = 0;  // 0 = hardware concurrency; grid points are independent

  /// Grids must be nonempty and strictly increasing, theta in [0, 360]
  /// degrees, transmission in [0, 1].
  void validate() const;
};

/// Scatter of the per-repeat Monte Carlo estimates (population std).
struct TradeoffSpread {
  double eps_a = 0.0;
  double eps_b = 0.0;
  double sigma_a = 0.0;
  double sigma_b = 0.0;
  double lhs_heisenberg = 0.0;
  double lhs_ozawa = 0.0;
  double lhs_branciard = 0.0;
};

struct ScenarioPoint {
  double parameter = 0.0;  // theta in degrees, or transmission
  TradeoffPoint analytic;
  std::optional<TradeoffPoint> mc;        // present iff mode != kAnalytic
  std::optional<TradeoffSpread> mc_spread;
  std::vector<std::uint64_t> repeat_seeds;
};

struct ScenarioResult {
  ScenarioConfig config;
  std::string scenario_name;
  std::string parameter_name;  // "theta_deg" or "transmission"
  std::vector<ScenarioPoint> points;
};

ScenarioResult run_error_free(const ScenarioConfig& config);
ScenarioResult run_nonzero_error(const ScenarioConfig& config);
ScenarioResult run_mixed_state(const ScenarioConfig& config);

/// Dispatches on the active scan alternative.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// Transmission T* at which eps(A) eps(B) crosses c_ab in the nonzero-error
/// scan; the product is below c_ab (Heisenberg violated) for all T > T*.
/// Throws if the product never reaches c_ab on [0, 1].
double heisenberg_violation_threshold(
    const SqueezingSpec& spec,
    double c_ab = QuadratureConvention::commutator_bound);

struct LabeledBoundCurve {
  std::string relation;       // "heisenberg", "ozawa", "branciard"
  std::string sigma_variant;  // "spec", "pure_equivalent", or "none"
  BoundCurve curve;
};

struct OverlayPoint {
  std::string scenario;
  double parameter = 0.0;
  double eps_a = 0.0;
  double eps_b = 0.0;
};

/// Error-plane assembly: the three lower-bound curves (Ozawa and Branciard
/// once per sigma variant, truncated at their eps_b = 0 intercept) plus the
/// analytic (eps_a, eps_b) points of both transmission scans and the
/// theta = 0 error-free point.
struct BoundsPlane {
  double c_ab = 0.0;
  double sigma_a_spec = 0.0, sigma_b_spec = 0.0;
  double sigma_a_pure = 0.0, sigma_b_pure = 0.0;
  std::vector<LabeledBoundCurve> curves;
  std::vector<OverlayPoint> points;
};

BoundsPlane assemble_bounds_plane(const SqueezingSpec& spec,
                                  const std::vector<double>& eps_a_grid);

}  // namespace epr
