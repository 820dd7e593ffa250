#include "epr/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>
#include <utility>

namespace epr {

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

// Seed-derivation stream tags, one per scenario.
constexpr std::uint64_t kErrorFreeTag = 1;
constexpr std::uint64_t kNonzeroErrorTag = 2;
constexpr std::uint64_t kMixedStateTag = 3;

void check_grid(const std::vector<double>& grid, double lo, double hi,
                const char* name) {
  if (grid.empty()) {
    throw std::invalid_argument(std::string("ScenarioConfig: ") + name +
                                " grid is empty");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= lo && grid[i] <= hi)) {
      throw std::invalid_argument(std::string("ScenarioConfig: ") + name +
                                  " value " + std::to_string(grid[i]) +
                                  " outside [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument(std::string("ScenarioConfig: ") + name +
                                  " grid must be strictly increasing");
    }
  }
}

// Everything one grid point needs for both evaluation routes.
struct PointTask {
  double parameter = 0.0;
  GaussianState state;
  Eigen::VectorXd obs_a, obs_b, obs_c, obs_d;
};

TradeoffPoint to_tradeoff(const ErrorStats& stats, double c_ab,
                          RadicandHandling handling) {
  return make_tradeoff_point(stats.eps_a, stats.eps_b, stats.sigma_a, stats.sigma_b,
                             c_ab, handling);
}

ScenarioPoint evaluate_point(const PointTask& task, const ScenarioConfig& config,
                             std::uint64_t point_seed, double c_ab) {
  ScenarioPoint point;
  point.parameter = task.parameter;
  point.analytic = to_tradeoff(
      analytic_stats(task.state, task.obs_a, task.obs_b, task.obs_c, task.obs_d),
      c_ab, RadicandHandling::kExact);
  if (config.mode == RunMode::kAnalytic) {
    return point;
  }

  std::vector<TradeoffPoint> repeats;
  repeats.reserve(config.repeats);
  for (int rep = 0; rep < config.repeats; ++rep) {
    const std::uint64_t seed = mix_seed(point_seed, static_cast<std::uint64_t>(rep));
    point.repeat_seeds.push_back(seed);
    repeats.push_back(to_tradeoff(
        monte_carlo_stats(task.state, task.obs_a, task.obs_b, task.obs_c, task.obs_d,
                          config.n_shots, seed),
        c_ab, RadicandHandling::kSampled));
  }

  const double n = static_cast<double>(repeats.size());
  auto mean_of = [&](double TradeoffPoint::*field) {
    double sum = 0.0;
    for (const TradeoffPoint& r : repeats) sum += r.*field;
    return sum / n;
  };
  auto spread_of = [&](double TradeoffPoint::*field, double mean) {
    double sum = 0.0;
    for (const TradeoffPoint& r : repeats) {
      const double d = r.*field - mean;
      sum += d * d;
    }
    return std::sqrt(sum / n);
  };

  TradeoffPoint mc = make_tradeoff_point(
      mean_of(&TradeoffPoint::eps_a), mean_of(&TradeoffPoint::eps_b),
      mean_of(&TradeoffPoint::sigma_a), mean_of(&TradeoffPoint::sigma_b), c_ab,
      RadicandHandling::kSampled);
  // The aggregated LHS values are the means of the per-repeat LHS evaluations,
  // mirroring how repeated measurement records are averaged.
  mc.lhs_heisenberg = mean_of(&TradeoffPoint::lhs_heisenberg);
  mc.lhs_ozawa = mean_of(&TradeoffPoint::lhs_ozawa);
  mc.lhs_branciard = mean_of(&TradeoffPoint::lhs_branciard);
  mc.heisenberg_satisfied = mc.lhs_heisenberg >= c_ab - 1e-9;
  mc.ozawa_satisfied = mc.lhs_ozawa >= c_ab - 1e-9;
  mc.branciard_satisfied = mc.lhs_branciard >= c_ab - 1e-9;

  TradeoffSpread spread;
  spread.eps_a = spread_of(&TradeoffPoint::eps_a, mc.eps_a);
  spread.eps_b = spread_of(&TradeoffPoint::eps_b, mc.eps_b);
  spread.sigma_a = spread_of(&TradeoffPoint::sigma_a, mc.sigma_a);
  spread.sigma_b = spread_of(&TradeoffPoint::sigma_b, mc.sigma_b);
  spread.lhs_heisenberg = spread_of(&TradeoffPoint::lhs_heisenberg, mc.lhs_heisenberg);
  spread.lhs_ozawa = spread_of(&TradeoffPoint::lhs_ozawa, mc.lhs_ozawa);
  spread.lhs_branciard = spread_of(&TradeoffPoint::lhs_branciard, mc.lhs_branciard);

  point.mc = mc;
  point.mc_spread = spread;
  return point;
}

// Runs the per-point tasks, possibly concurrently. Per-point seeds are fixed
// up front, so the schedule cannot change any result.
std::vector<ScenarioPoint> run_points(const std::vector<PointTask>& tasks,
                                      const ScenarioConfig& config,
                                      std::uint64_t scenario_tag, double c_ab) {
  std::vector<std::uint64_t> point_seeds(tasks.size());
  const std::uint64_t scan_seed = mix_seed(config.seed, scenario_tag);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    point_seeds[i] = mix_seed(scan_seed, static_cast<std::uint64_t>(i));
  }

  std::vector<ScenarioPoint> points(tasks.size());
  unsigned n_threads = config.n_threads > 0
                           ? static_cast<unsigned>(config.n_threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, tasks.size());
  const bool parallel = config.mode != RunMode::kAnalytic && n_threads > 1;

  if (!parallel) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      points[i] = evaluate_point(tasks[i], config, point_seeds[i], c_ab);
    }
    return points;
  }

  std::vector<std::future<void>> workers;
  workers.reserve(n_threads);
  for (unsigned w = 0; w < n_threads; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < tasks.size(); i += n_threads) {
        points[i] = evaluate_point(tasks[i], config, point_seeds[i], c_ab);
      }
    }));
  }
  for (auto& worker : workers) worker.get();
  return points;
}

void require_zero_mean(const GaussianState& state) {
  if (state.mean().cwiseAbs().maxCoeff() != 0.0) {
    throw std::logic_error("scenario: expected a zero-mean state");
  }
}

}  // namespace

std::vector<double> make_grid(double start, double step, double stop) {
  if (!(step > 0.0) || !(stop >= start)) {
    throw std::invalid_argument("make_grid: need step > 0 and stop >= start");
  }
  std::vector<double> grid;
  // floor keeps every multiple at or below stop; the fuzz admits spans whose
  // quotient lands just under an integer, and the snap below absorbs it.
  const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9));
  for (int i = 0; i <= n; ++i) {
    double value = start + i * step;
    if (std::abs(value - stop) <= step * 1e-9) value = stop;
    grid.push_back(value);
  }
  if (grid.back() != stop) grid.push_back(stop);
  return grid;
}

std::vector<double> default_theta_grid() { return make_grid(0.0, 30.0, 360.0); }

std::vector<double> default_t_grid() { return make_grid(0.0, 0.1, 1.0); }

void ScenarioConfig::validate() const {
  if (n_shots < 2) {
    throw std::invalid_argument("ScenarioConfig: n_shots must be >= 2");
  }
  if (repeats < 1) {
    throw std::invalid_argument("ScenarioConfig: repeats must be >= 1");
  }
  if (n_threads < 0) {
    throw std::invalid_argument("ScenarioConfig: n_threads must be >= 0");
  }
  if (const auto* scan = std::get_if<ErrorFreeScan>(&this->scan)) {
    check_grid(scan->theta_deg, 0.0, 360.0, "theta");
  } else if (const auto* nz = std::get_if<NonzeroErrorScan>(&this->scan)) {
    check_grid(nz->transmission, 0.0, 1.0, "transmission");
  } else {
    check_grid(std::get<MixedStateScan>(this->scan).transmission, 0.0, 1.0,
               "transmission");
  }
}

ScenarioResult run_error_free(const ScenarioConfig& config) {
  config.validate();
  const auto* scan = std::get_if<ErrorFreeScan>(&config.scan);
  if (scan == nullptr) {
    throw std::invalid_argument("run_error_free: config.scan is not ErrorFreeScan");
  }
  const GaussianState state = epr_state(config.spec);
  require_zero_mean(state);

  std::vector<PointTask> tasks;
  tasks.reserve(scan->theta_deg.size());
  for (double theta_deg : scan->theta_deg) {
    // The optimal estimation reads A itself: C = A = x1, so eps(A) = 0 by
    // construction; D is p2 of the phase-shifted meter mode.
    GaussianState rotated = phase_rotate(state, 1, theta_deg * kDegToRad);
    PointTask task{theta_deg, std::move(rotated), x_coeff(2, 0), p_coeff(2, 0),
                   x_coeff(2, 0), p_coeff(2, 1)};
    tasks.push_back(std::move(task));
  }

  ScenarioResult result{config, "error_free", "theta_deg",
                        run_points(tasks, config, kErrorFreeTag,
                                   QuadratureConvention::commutator_bound)};
  return result;
}

ScenarioResult run_nonzero_error(const ScenarioConfig& config) {
  config.validate();
  const auto* scan = std::get_if<NonzeroErrorScan>(&config.scan);
  if (scan == nullptr) {
    throw std::invalid_argument(
        "run_nonzero_error: config.scan is not NonzeroErrorScan");
  }
  // The vacuum ancilla that feeds the lossy channel is tracked explicitly as
  // mode 2, so C = sqrt(T) x1 + sqrt(1-T) xv is a linear form on one joint
  // state and its correlation with A = x1 comes out of the same covariance.
  const GaussianState joint = tensor_product(epr_state(config.spec), vacuum(1));
  require_zero_mean(joint);
  const double sigma2_x1 = linear_combination_variance(joint, x_coeff(3, 0));

  std::vector<PointTask> tasks;
  tasks.reserve(scan->transmission.size());
  for (double t : scan->transmission) {
    Eigen::VectorXd obs_c = std::sqrt(t) * x_coeff(3, 0) +
                            std::sqrt(1.0 - t) * x_coeff(3, 2);
    PointTask task{t, joint, x_coeff(3, 0), p_coeff(3, 0), std::move(obs_c),
                   p_coeff(3, 1)};

    // Ancilla construction must agree with the closed form for eps(A)^2.
    const double via_state =
        linear_combination_variance(joint, task.obs_c - task.obs_a);
    const double closed_form = (1.0 - std::sqrt(t)) * (1.0 - std::sqrt(t)) * sigma2_x1 +
                               (1.0 - t) * QuadratureConvention::vacuum_variance;
    if (std::abs(via_state - closed_form) > 1e-12) {
      throw std::logic_error("run_nonzero_error: loss model mismatch");
    }
    tasks.push_back(std::move(task));
  }

  ScenarioResult result{config, "nonzero_error", "transmission",
                        run_points(tasks, config, kNonzeroErrorTag,
                                   QuadratureConvention::commutator_bound)};
  return result;
}

ScenarioResult run_mixed_state(const ScenarioConfig& config) {
  config.validate();
  const auto* scan = std::get_if<MixedStateScan>(&config.scan);
  if (scan == nullptr) {
    throw std::invalid_argument("run_mixed_state: config.scan is not MixedStateScan");
  }
  const GaussianState state = epr_state(config.spec);
  require_zero_mean(state);

  std::vector<PointTask> tasks;
  tasks.reserve(scan->transmission.size());
  for (double t : scan->transmission) {
    // The lossy output is itself the target: A = C = x1', B = p1', D = p2.
    GaussianState lossy = pure_loss(state, 0, t);
    PointTask task{t, std::move(lossy), x_coeff(2, 0), p_coeff(2, 0), x_coeff(2, 0),
                   p_coeff(2, 1)};
    tasks.push_back(std::move(task));
  }

  ScenarioResult result{config, "mixed_state", "transmission",
                        run_points(tasks, config, kMixedStateTag,
                                   QuadratureConvention::commutator_bound)};
  return result;
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  if (std::holds_alternative<ErrorFreeScan>(config.scan)) {
    return run_error_free(config);
  }
  if (std::holds_alternative<NonzeroErrorScan>(config.scan)) {
    return run_nonzero_error(config);
  }
  return run_mixed_state(config);
}

double heisenberg_violation_threshold(const SqueezingSpec& spec, double c_ab) {
  const double v_minus = spec.squeezed_variance();
  const double v_plus = spec.antisqueezed_variance();
  const double sigma2 = 0.5 * (v_plus + v_minus);
  const double eps_b = std::sqrt(2.0 * v_minus);
  auto product = [&](double t) {
    const double one_minus_root = 1.0 - std::sqrt(t);
    const double eps_a = std::sqrt(one_minus_root * one_minus_root * sigma2 +
                                   (1.0 - t) * QuadratureConvention::vacuum_variance);
    return eps_a * eps_b;
  };
  if (product(0.0) <= c_ab) {
    throw std::domain_error(
        "heisenberg_violation_threshold: eps(A) eps(B) < c_ab for every T");
  }
  double lo = 0.0, hi = 1.0;  // product(lo) > c_ab >= product(hi)
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (product(mid) > c_ab ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

BoundsPlane assemble_bounds_plane(const SqueezingSpec& spec,
                                  const std::vector<double>& eps_a_grid) {
  if (eps_a_grid.empty()) {
    throw std::invalid_argument("assemble_bounds_plane: eps_a grid is empty");
  }
  const double c_ab = QuadratureConvention::commutator_bound;
  BoundsPlane plane;
  plane.c_ab = c_ab;

  const GaussianState state = epr_state(spec);
  plane.sigma_a_spec = std::sqrt(linear_combination_variance(state, x_coeff(2, 0)));
  plane.sigma_b_spec = std::sqrt(linear_combination_variance(state, p_coeff(2, 0)));
  const double pure_var = std::cosh(2.0 * spec.r()) / 4.0;
  plane.sigma_a_pure = std::sqrt(pure_var);
  plane.sigma_b_pure = plane.sigma_a_pure;

  std::vector<double> positive_grid;
  for (double e : eps_a_grid) {
    if (e > 0.0) positive_grid.push_back(e);
  }
  plane.curves.push_back(
      {"heisenberg", "none", heisenberg_bound_curve(positive_grid, c_ab)});

  // Ozawa/Branciard curves stop at their eps_b = 0 intercept eps_a = c/sigma_b;
  // every emitted point then solves its relation's equality exactly.
  auto truncated = [&](const char* relation, const char* variant,
                       double (*bound_at)(double, double, double, double),
                       double sigma_a, double sigma_b) {
    const double intercept = c_ab / sigma_b;
    BoundCurve curve;
    for (double e : eps_a_grid) {
      if (e >= intercept) break;
      curve.eps_a.push_back(e);
      curve.eps_b.push_back(bound_at(e, sigma_a, sigma_b, c_ab));
    }
    if (intercept <= eps_a_grid.back()) {
      curve.eps_a.push_back(intercept);
      curve.eps_b.push_back(0.0);
    }
    plane.curves.push_back({relation, variant, std::move(curve)});
  };
  truncated("ozawa", "spec", &ozawa_bound_at, plane.sigma_a_spec, plane.sigma_b_spec);
  truncated("branciard", "spec", &branciard_bound_at, plane.sigma_a_spec,
            plane.sigma_b_spec);
  truncated("ozawa", "pure_equivalent", &ozawa_bound_at, plane.sigma_a_pure,
            plane.sigma_b_pure);
  truncated("branciard", "pure_equivalent", &branciard_bound_at, plane.sigma_a_pure,
            plane.sigma_b_pure);

  ScenarioConfig config;
  config.spec = spec;
  config.mode = RunMode::kAnalytic;

  config.scan = ErrorFreeScan{{0.0}};
  for (const ScenarioPoint& p : run_error_free(config).points) {
    plane.points.push_back(
        {"error_free_theta0", p.parameter, p.analytic.eps_a, p.analytic.eps_b});
  }
  config.scan = NonzeroErrorScan{default_t_grid()};
  for (const ScenarioPoint& p : run_nonzero_error(config).points) {
    plane.points.push_back(
        {"nonzero_error", p.parameter, p.analytic.eps_a, p.analytic.eps_b});
  }
  config.scan = MixedStateScan{default_t_grid()};
  for (const ScenarioPoint& p : run_mixed_state(config).points) {
    plane.points.push_back(
        {"mixed_state", p.parameter, p.analytic.eps_a, p.analytic.eps_b});
  }
  return plane;
}

}  // namespace epr
