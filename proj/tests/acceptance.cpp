// Acceptance gate: one line per criterion, exit code = number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "epr/relations.hpp"
#include "epr/scenarios.hpp"

using namespace epr;

namespace {

constexpr double kC = QuadratureConvention::commutator_bound;

int g_failures = 0;

void report(int index, bool ok, const std::string& text) {
  std::printf("[%s] %d. %s\n", ok ? "PASS" : "FAIL", index, text.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

ScenarioConfig base_config(ScenarioScan scan) {
  ScenarioConfig config;
  config.scan = std::move(scan);
  return config;
}

// 1. Error-free scan: eps(A) = 0 exactly and the Heisenberg product
//    0 < c_ab at every phase.
void criterion_error_free_identity() {
  ScenarioConfig config = base_config(ErrorFreeScan{default_theta_grid()});
  const ScenarioResult result = run_error_free(config);
  bool ok = !result.points.empty();
  for (const ScenarioPoint& point : result.points) {
    ok = ok && point.analytic.eps_a == 0.0 &&
         point.analytic.lhs_heisenberg == 0.0 &&
         point.analytic.lhs_heisenberg < kC;
  }
  report(1, ok,
         "error-free scan: eps(A) = 0 and Heisenberg LHS = 0 < 0.25 at every "
         "phase");
}

// 2. Pure-state zero-error value sqrt(1 + e^{-4r})/4 for both valid
//    relations, at or above c_ab across r in {0, 0.1, ..., 1.0}.
void criterion_pure_zero_error_value() {
  bool ok = true;
  double worst = 0.0;
  for (double r : make_grid(0.0, 0.1, 1.0)) {
    ScenarioConfig config = base_config(ErrorFreeScan{{0.0}});
    config.spec = SqueezingSpec::pure(r);
    const TradeoffPoint p = run_error_free(config).points[0].analytic;
    const double expected = std::sqrt(1.0 + std::exp(-4.0 * r)) / 4.0;
    worst = std::max({worst, std::abs(p.lhs_ozawa - expected),
                      std::abs(p.lhs_branciard - expected)});
    ok = ok && std::abs(p.lhs_ozawa - expected) <= 1e-12 &&
         std::abs(p.lhs_branciard - expected) <= 1e-12 && p.lhs_ozawa >= kC;
  }
  report(2, ok,
         "pure-state zero-error LHS = sqrt(1 + e^{-4r})/4 >= 0.25 on r = 0..1 "
         "(max deviation " + std::to_string(worst) + ")");
}

// 3. Impure operating point: analytic eps(B) at zero phase, Monte Carlo at
//    the default record length within 1.5% relative, under 5 seconds.
void criterion_operating_point() {
  const auto start = std::chrono::steady_clock::now();
  ScenarioConfig config = base_config(ErrorFreeScan{{0.0}});
  config.mode = RunMode::kMonteCarlo;
  const ScenarioResult result = run_error_free(config);
  const double elapsed = seconds_since(start);

  const TradeoffPoint& analytic = result.points[0].analytic;
  const TradeoffPoint& mc = *result.points[0].mc;
  const double expected = std::sqrt(2.0 * std::pow(10.0, -0.29) / 4.0);
  const double relative = std::abs(mc.eps_b - analytic.eps_b) / analytic.eps_b;
  const bool ok = std::abs(analytic.eps_b - expected) <= 1e-12 &&
                  relative <= 0.015 && elapsed < 5.0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "operating point: eps(B) = 0.5064, MC within 1.5%% (got "
                "%.3f%%), %.2f s < 5 s",
                100.0 * relative, elapsed);
  report(3, ok, buf);
}

// 4. Heisenberg violation threshold in [0.25, 0.35]; the product crosses
//    c_ab exactly there on the default transmission grid.
void criterion_threshold() {
  const double t_star = heisenberg_violation_threshold(SqueezingSpec::impure(-2.9, 3.9));
  bool ok = t_star >= 0.25 && t_star <= 0.35;
  const ScenarioResult scan =
      run_nonzero_error(base_config(NonzeroErrorScan{default_t_grid()}));
  bool saw_point_two = false;
  for (const ScenarioPoint& point : scan.points) {
    if (point.parameter > t_star) {
      ok = ok && point.analytic.lhs_heisenberg < kC;
    } else {
      ok = ok && point.analytic.lhs_heisenberg >= kC;
    }
    if (std::abs(point.parameter - 0.2) < 1e-12) {
      saw_point_two = true;
      ok = ok && point.analytic.heisenberg_satisfied;
    }
  }
  ok = ok && saw_point_two;
  char buf[120];
  std::snprintf(buf, sizeof buf,
                "violation threshold T* = %.4f in [0.25, 0.35], grid sides "
                "consistent, T = 0.2 satisfies Heisenberg",
                t_star);
  report(4, ok, buf);
}

// 5. Randomized search over specs, scenarios, and parameters never violates
//    the valid relations, and Branciard is never looser than Ozawa.
void criterion_universal_validity() {
  std::mt19937_64 gen(20240516);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  bool ok = true;
  for (int trial = 0; trial < 10000 && ok; ++trial) {
    SqueezingSpec spec = SqueezingSpec::pure(1.2 * u01(gen));
    if (u01(gen) < 0.5) {
      const double sq = -6.0 * u01(gen);
      spec = SqueezingSpec::impure(sq, -sq + 4.0 * u01(gen));
    }
    ScenarioConfig config;
    config.spec = spec;
    const int which = static_cast<int>(3.0 * u01(gen)) % 3;
    if (which == 0) {
      config.scan = ErrorFreeScan{{360.0 * u01(gen)}};
    } else if (which == 1) {
      config.scan = NonzeroErrorScan{{u01(gen)}};
    } else {
      config.scan = MixedStateScan{{u01(gen)}};
    }
    const TradeoffPoint p = run_scenario(config).points[0].analytic;
    ok = ok && p.lhs_ozawa >= kC - 1e-9 && p.lhs_branciard >= kC - 1e-9 &&
         p.lhs_branciard <= p.lhs_ozawa + 1e-12;
  }
  report(5, ok,
         "10^4 random configurations: Ozawa and Branciard hold to 1e-9 and "
         "Branciard <= Ozawa + 1e-12");
}

// 6. T = 1 channel scans coincide with the zero-phase error-free point to
//    1e-12, and the mixed-state LHS is minimized at unit transmission.
void criterion_scenario_consistency() {
  const TradeoffPoint free0 =
      run_error_free(base_config(ErrorFreeScan{{0.0}})).points[0].analytic;
  const TradeoffPoint nz1 =
      run_nonzero_error(base_config(NonzeroErrorScan{{1.0}})).points[0].analytic;
  const ScenarioResult mixed =
      run_mixed_state(base_config(MixedStateScan{default_t_grid()}));
  const TradeoffPoint& mx1 = mixed.points.back().analytic;

  const auto close = [](const TradeoffPoint& a, const TradeoffPoint& b) {
    return std::abs(a.eps_a - b.eps_a) <= 1e-12 &&
           std::abs(a.eps_b - b.eps_b) <= 1e-12 &&
           std::abs(a.sigma_a - b.sigma_a) <= 1e-12 &&
           std::abs(a.sigma_b - b.sigma_b) <= 1e-12 &&
           std::abs(a.lhs_heisenberg - b.lhs_heisenberg) <= 1e-12 &&
           std::abs(a.lhs_ozawa - b.lhs_ozawa) <= 1e-12 &&
           std::abs(a.lhs_branciard - b.lhs_branciard) <= 1e-12;
  };
  bool ok = close(free0, nz1) && close(free0, mx1);
  for (const ScenarioPoint& point : mixed.points) {
    ok = ok && point.analytic.lhs_ozawa >= mx1.lhs_ozawa - 1e-15 &&
         point.analytic.lhs_branciard >= mx1.lhs_branciard - 1e-15;
  }
  report(6, ok,
         "T = 1 scans match the zero-phase error-free point to 1e-12; mixed "
         "LHS minimal at T = 1");
}

// 7. Full Monte Carlo suite against the analytic oracle: every statistic
//    within 5 standard errors of its analytic value, under 2 minutes.
void criterion_mc_oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  double worst_z = 0.0;
  int checked = 0;
  const std::vector<ScenarioScan> scans = {
      ErrorFreeScan{default_theta_grid()},
      NonzeroErrorScan{default_t_grid()},
      MixedStateScan{default_t_grid()},
  };
  for (const ScenarioScan& scan : scans) {
    ScenarioConfig config = base_config(scan);
    config.mode = RunMode::kBoth;
    const ScenarioResult result = run_scenario(config);
    for (const ScenarioPoint& point : result.points) {
      const TradeoffPoint& a = point.analytic;
      const TradeoffPoint& m = *point.mc;
      const TradeoffSpread& s = *point.mc_spread;
      const double root_repeats = std::sqrt(static_cast<double>(config.repeats));
      const auto within = [&](double mc, double analytic, double spread) {
        const double se = spread / root_repeats;
        const double diff = std::abs(mc - analytic);
        if (se > 0.0 && diff / se > worst_z) worst_z = diff / se;
        ++checked;
        return diff <= 5.0 * se + 1e-12;
      };
      ok = ok && within(m.eps_a, a.eps_a, s.eps_a) &&
           within(m.eps_b, a.eps_b, s.eps_b) &&
           within(m.sigma_a, a.sigma_a, s.sigma_a) &&
           within(m.sigma_b, a.sigma_b, s.sigma_b) &&
           within(m.lhs_heisenberg, a.lhs_heisenberg, s.lhs_heisenberg) &&
           within(m.lhs_ozawa, a.lhs_ozawa, s.lhs_ozawa) &&
           within(m.lhs_branciard, a.lhs_branciard, s.lhs_branciard);
    }
  }
  const double elapsed = seconds_since(start);
  ok = ok && elapsed < 120.0;
  char buf[180];
  std::snprintf(buf, sizeof buf,
                "full MC suite (3 scans, 10 repeats, 5e5 shots): %d statistics "
                "within 5 SE (worst %.2f), %.1f s < 120 s",
                checked, worst_z, elapsed);
  report(7, ok, buf);
}

// 8. Every emitted bound-curve sample solves its relation's equality at
//    c_ab to 1e-9; the Heisenberg curve has no zero-error sample.
void criterion_bound_self_consistency() {
  const BoundsPlane plane = assemble_bounds_plane(SqueezingSpec::impure(-2.9, 3.9),
                                                  make_grid(0.0, 0.01, 1.0));
  bool ok = true;
  double worst = 0.0;
  for (const LabeledBoundCurve& labeled : plane.curves) {
    if (labeled.relation == "heisenberg") {
      for (double e : labeled.curve.eps_a) ok = ok && e > 0.0;
      continue;
    }
    const bool spec_variant = labeled.sigma_variant == "spec";
    const double sigma_a = spec_variant ? plane.sigma_a_spec : plane.sigma_a_pure;
    const double sigma_b = spec_variant ? plane.sigma_b_spec : plane.sigma_b_pure;
    for (std::size_t i = 0; i < labeled.curve.eps_a.size(); ++i) {
      const double ea = labeled.curve.eps_a[i];
      const double eb = labeled.curve.eps_b[i];
      const double lhs = labeled.relation == "ozawa"
                             ? ozawa_lhs(ea, eb, sigma_a, sigma_b)
                             : branciard_lhs(ea, eb, sigma_a, sigma_b, plane.c_ab);
      worst = std::max(worst, std::abs(lhs - plane.c_ab));
      ok = ok && std::abs(lhs - plane.c_ab) <= 1e-9;
    }
  }
  char buf[140];
  std::snprintf(buf, sizeof buf,
                "bound curves: every sample re-evaluates to c_ab within 1e-9 "
                "(worst %.2e), Heisenberg curve starts past zero",
                worst);
  report(8, ok, buf);
}

}  // namespace

int main() {
  criterion_error_free_identity();
  criterion_pure_zero_error_value();
  criterion_operating_point();
  criterion_threshold();
  criterion_universal_validity();
  criterion_scenario_consistency();
  criterion_mc_oracle_equivalence();
  criterion_bound_self_consistency();
  if (g_failures == 0) {
    std::printf("all 8 acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  }
  return g_failures;
}
