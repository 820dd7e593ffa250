#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <set>

#include "doctest.h"
#include "epr/scenarios.hpp"

using namespace epr;

namespace {

const SqueezingSpec kImpure = SqueezingSpec::impure(-2.9, 3.9);

ScenarioConfig analytic_config(ScenarioScan scan, SqueezingSpec spec = kImpure) {
  ScenarioConfig config;
  config.spec = spec;
  config.scan = std::move(scan);
  config.mode = RunMode::kAnalytic;
  return config;
}

bool points_equal(const TradeoffPoint& a, const TradeoffPoint& b, double tol) {
  return std::abs(a.eps_a - b.eps_a) <= tol && std::abs(a.eps_b - b.eps_b) <= tol &&
         std::abs(a.sigma_a - b.sigma_a) <= tol &&
         std::abs(a.sigma_b - b.sigma_b) <= tol &&
         std::abs(a.lhs_heisenberg - b.lhs_heisenberg) <= tol &&
         std::abs(a.lhs_ozawa - b.lhs_ozawa) <= tol &&
         std::abs(a.lhs_branciard - b.lhs_branciard) <= tol;
}

}  // namespace

TEST_CASE("make_grid snaps the endpoint and keeps exact values") {
  const std::vector<double> theta = make_grid(0.0, 30.0, 360.0);
  CHECK(theta.size() == 13);
  CHECK(theta.front() == 0.0);
  CHECK(theta.back() == 360.0);
  CHECK(theta[6] == 180.0);

  const std::vector<double> t = make_grid(0.0, 0.1, 1.0);
  CHECK(t.size() == 11);
  CHECK(t.back() == 1.0);

  // A step that does not divide the span still ends exactly at stop.
  const std::vector<double> odd = make_grid(0.0, 0.4, 1.0);
  CHECK(odd.size() == 4);
  CHECK(odd.back() == 1.0);

  CHECK_THROWS_AS(make_grid(0.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1.0, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("config validation") {
  ScenarioConfig config;
  config.validate();  // defaults are valid

  config.n_shots = 1;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.n_shots = kDefaultShots;
  config.repeats = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.repeats = 10;

  config.scan = ErrorFreeScan{{}};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.scan = ErrorFreeScan{{-5.0, 10.0}};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.scan = ErrorFreeScan{{10.0, 10.0}};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.scan = NonzeroErrorScan{{0.0, 1.2}};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.scan = MixedStateScan{{0.5, 0.2}};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("error-free scan against the closed-form phase dependence") {
  const double r = 0.33387483848413662;
  const ScenarioResult result = run_error_free(
      analytic_config(ErrorFreeScan{default_theta_grid()}, SqueezingSpec::pure(r)));
  CHECK(result.scenario_name == "error_free");
  CHECK(result.parameter_name == "theta_deg");
  CHECK(result.points.size() == 13);

  for (const ScenarioPoint& point : result.points) {
    const TradeoffPoint& p = point.analytic;
    CHECK(p.eps_a == 0.0);
    CHECK(p.lhs_heisenberg == 0.0);
    CHECK_FALSE(point.mc.has_value());
    const double theta = point.parameter * std::acos(-1.0) / 180.0;
    const double expected =
        std::sqrt(std::cosh(2.0 * r) / 2.0 - std::cos(theta) * std::sinh(2.0 * r) / 2.0);
    CHECK(p.eps_b == doctest::Approx(expected).epsilon(1e-12));
    CHECK(p.sigma_a == doctest::Approx(0.55483172941773641).epsilon(1e-14));
    CHECK(p.sigma_b == p.sigma_a);
    // With eps_a = 0 the ozawa and branciard sums coincide.
    CHECK(std::abs(p.lhs_ozawa - p.lhs_branciard) < 1e-12);
  }

  CHECK(result.points[0].analytic.eps_b ==
        doctest::Approx(0.50638986166360245).epsilon(1e-14));
  CHECK(result.points[3].analytic.eps_b ==
        doctest::Approx(0.78465055657748217).epsilon(1e-14));  // 90 degrees
  CHECK(result.points[6].analytic.eps_b ==
        doctest::Approx(0.98738153713699886).epsilon(1e-14));  // 180 degrees

  // The maximum error sits at 180 degrees on the default grid.
  for (const ScenarioPoint& point : result.points) {
    CHECK(point.analytic.eps_b <= result.points[6].analytic.eps_b + 1e-15);
  }
}

TEST_CASE("error-free scan at the impure operating point") {
  const ScenarioResult result =
      run_error_free(analytic_config(ErrorFreeScan{{0.0}}));
  const TradeoffPoint& p = result.points[0].analytic;
  CHECK(p.eps_b == doctest::Approx(0.50638986166360245).epsilon(1e-14));
  CHECK(p.sigma_a == doctest::Approx(0.60905359982480146).epsilon(1e-14));
  CHECK(p.lhs_ozawa == doctest::Approx(0.30841856816100030).epsilon(1e-13));
  CHECK(p.ozawa_satisfied);
  CHECK(p.branciard_satisfied);
  CHECK_FALSE(p.heisenberg_satisfied);
}

TEST_CASE("nonzero-error scan statistics") {
  const ScenarioResult result =
      run_nonzero_error(analytic_config(NonzeroErrorScan{default_t_grid()}));
  CHECK(result.scenario_name == "nonzero_error");
  CHECK(result.points.size() == 11);

  for (const ScenarioPoint& point : result.points) {
    const TradeoffPoint& p = point.analytic;
    // The idler mode never passes through the channel.
    CHECK(p.eps_b == doctest::Approx(0.50638986166360245).epsilon(1e-14));
    // Sigmas describe the pre-loss targets.
    CHECK(p.sigma_a == doctest::Approx(0.60905359982480146).epsilon(1e-14));
    CHECK(p.sigma_b == p.sigma_a);
  }

  CHECK(result.points[0].analytic.eps_a ==
        doctest::Approx(0.78800145143238753).epsilon(1e-14));  // T = 0
  CHECK(result.points[2].analytic.eps_a ==
        doctest::Approx(0.55977772289290612).epsilon(1e-14));  // T = 0.2
  CHECK(result.points[2].analytic.lhs_heisenberg ==
        doctest::Approx(0.28346576365810512).epsilon(1e-13));
  CHECK(result.points[2].analytic.heisenberg_satisfied);
  CHECK(result.points[3].analytic.lhs_heisenberg ==
        doctest::Approx(0.25363959384644746).epsilon(1e-13));
  CHECK(result.points[4].analytic.lhs_heisenberg ==
        doctest::Approx(0.22652711834234218).epsilon(1e-13));
  CHECK_FALSE(result.points[4].analytic.heisenberg_satisfied);

  // eps_a shrinks monotonically as the channel clears up.
  for (std::size_t i = 1; i < result.points.size(); ++i) {
    CHECK(result.points[i].analytic.eps_a < result.points[i - 1].analytic.eps_a);
  }
  CHECK(result.points[10].analytic.eps_a == 0.0);
}

TEST_CASE("mixed-state scan statistics") {
  const ScenarioResult result =
      run_mixed_state(analytic_config(MixedStateScan{default_t_grid()}));
  CHECK(result.scenario_name == "mixed_state");

  for (const ScenarioPoint& point : result.points) {
    const TradeoffPoint& p = point.analytic;
    CHECK(p.eps_a == 0.0);
    CHECK(p.lhs_heisenberg == 0.0);
    CHECK(std::abs(p.lhs_ozawa - p.lhs_branciard) < 1e-12);
  }

  // T = 0: the signal is fresh vacuum, uncorrelated with the idler.
  CHECK(result.points[0].analytic.sigma_a == 0.5);
  CHECK(result.points[0].analytic.eps_b ==
        doctest::Approx(0.78800145143238753).epsilon(1e-14));
  // T = 0.5 interior point.
  CHECK(result.points[5].analytic.eps_b ==
        doctest::Approx(0.58150326032326471).epsilon(1e-14));
  CHECK(result.points[5].analytic.sigma_a ==
        doctest::Approx(0.55720116989268310).epsilon(1e-14));
  CHECK(result.points[5].analytic.lhs_ozawa ==
        doctest::Approx(0.32401429694853255).epsilon(1e-13));

  // The relation LHS is minimized at unit transmission.
  const double at_unit = result.points[10].analytic.lhs_ozawa;
  for (const ScenarioPoint& point : result.points) {
    CHECK(point.analytic.lhs_ozawa >= at_unit - 1e-15);
  }
}

TEST_CASE("scenario consistency at the trivial channel settings") {
  const TradeoffPoint free0 =
      run_error_free(analytic_config(ErrorFreeScan{{0.0}})).points[0].analytic;
  const TradeoffPoint nz1 =
      run_nonzero_error(analytic_config(NonzeroErrorScan{{1.0}})).points[0].analytic;
  const TradeoffPoint mx1 =
      run_mixed_state(analytic_config(MixedStateScan{{1.0}})).points[0].analytic;
  CHECK(points_equal(free0, nz1, 1e-12));
  CHECK(points_equal(free0, mx1, 1e-12));
}

TEST_CASE("run_scenario dispatches on the scan alternative") {
  CHECK(run_scenario(analytic_config(ErrorFreeScan{{0.0}})).scenario_name ==
        "error_free");
  CHECK(run_scenario(analytic_config(NonzeroErrorScan{{0.5}})).scenario_name ==
        "nonzero_error");
  CHECK(run_scenario(analytic_config(MixedStateScan{{0.5}})).scenario_name ==
        "mixed_state");
}

TEST_CASE("heisenberg violation threshold") {
  const double t_star = heisenberg_violation_threshold(kImpure);
  CHECK(t_star == doctest::Approx(0.31301787779278170).epsilon(1e-10));
  CHECK(t_star > 0.25);
  CHECK(t_star < 0.35);

  // Threshold semantics against the scan itself.
  const ScenarioResult scan =
      run_nonzero_error(analytic_config(NonzeroErrorScan{default_t_grid()}));
  for (const ScenarioPoint& point : scan.points) {
    if (point.parameter > t_star) {
      CHECK(point.analytic.lhs_heisenberg < 0.25);
    } else {
      CHECK(point.analytic.lhs_heisenberg >= 0.25);
    }
  }

  // The pure-equivalent spec has its own crossing inside (0, 1): the T = 0
  // product is (1 + e^{-2r})/4 > 1/4 for every finite r.
  const double pure_star =
      heisenberg_violation_threshold(SqueezingSpec::pure(0.33387483848413662));
  CHECK(pure_star > 0.0);
  CHECK(pure_star < 1.0);

  // A bound too large to ever be reached on [0, 1] has no crossing.
  CHECK_THROWS_AS(heisenberg_violation_threshold(kImpure, 0.5), std::domain_error);
}

TEST_CASE("monte carlo scan tracks the analytic statistics") {
  ScenarioConfig config = analytic_config(NonzeroErrorScan{{0.2, 0.8}});
  config.mode = RunMode::kBoth;
  config.n_shots = 20000;
  config.repeats = 3;
  config.seed = 4242;
  const ScenarioResult result = run_nonzero_error(config);

  for (const ScenarioPoint& point : result.points) {
    REQUIRE(point.mc.has_value());
    REQUIRE(point.mc_spread.has_value());
    CHECK(point.repeat_seeds.size() == 3);
    CHECK(std::set<std::uint64_t>(point.repeat_seeds.begin(),
                                  point.repeat_seeds.end())
              .size() == 3);
    const TradeoffPoint& a = point.analytic;
    const TradeoffPoint& m = *point.mc;
    CHECK(std::abs(m.eps_a - a.eps_a) < 0.02);
    CHECK(std::abs(m.eps_b - a.eps_b) < 0.02);
    CHECK(std::abs(m.sigma_a - a.sigma_a) < 0.02);
    CHECK(std::abs(m.sigma_b - a.sigma_b) < 0.02);
    CHECK(std::abs(m.lhs_ozawa - a.lhs_ozawa) < 0.05);
    CHECK(m.c_ab == a.c_ab);
  }
}

TEST_CASE("monte carlo handles the fully absorbed mixed-state channel") {
  // At T = 0 the target is the vacuum, which sits exactly on the minimum
  // uncertainty boundary; sampled spreads dip below it and must not be
  // rejected by the cross-term domain check.
  ScenarioConfig config = analytic_config(MixedStateScan{{0.0}});
  config.mode = RunMode::kBoth;
  config.n_shots = 50000;
  config.repeats = 10;
  config.seed = 97;
  const ScenarioResult result = run_mixed_state(config);
  const ScenarioPoint& point = result.points[0];
  REQUIRE(point.mc.has_value());
  CHECK(point.mc->eps_a == 0.0);
  CHECK(std::isfinite(point.mc->lhs_branciard));
  CHECK(std::abs(point.mc->sigma_a - 0.5) < 0.02);
  CHECK(std::abs(point.mc->lhs_branciard - point.analytic.lhs_branciard) < 0.05);
}

TEST_CASE("monte carlo runs are reproducible and mode analytic skips them") {
  ScenarioConfig config = analytic_config(ErrorFreeScan{{0.0, 180.0}});
  config.mode = RunMode::kMonteCarlo;
  config.n_shots = 5000;
  config.repeats = 2;
  const ScenarioResult a = run_error_free(config);
  const ScenarioResult b = run_error_free(config);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].mc->eps_b == b.points[i].mc->eps_b);
    CHECK(a.points[i].mc->sigma_b == b.points[i].mc->sigma_b);
    CHECK(a.points[i].mc_spread->eps_b == b.points[i].mc_spread->eps_b);
  }

  config.seed = 1;
  const ScenarioResult c = run_error_free(config);
  CHECK(c.points[0].mc->eps_b != a.points[0].mc->eps_b);

  config.mode = RunMode::kAnalytic;
  const ScenarioResult d = run_error_free(config);
  CHECK_FALSE(d.points[0].mc.has_value());
  CHECK_FALSE(d.points[0].mc_spread.has_value());
}

TEST_CASE("thread count cannot change any result bit") {
  ScenarioConfig serial = analytic_config(MixedStateScan{{0.1, 0.4, 0.7, 1.0}});
  serial.mode = RunMode::kBoth;
  serial.n_shots = 4000;
  serial.repeats = 2;
  serial.n_threads = 1;
  ScenarioConfig parallel = serial;
  parallel.n_threads = 4;

  const ScenarioResult a = run_mixed_state(serial);
  const ScenarioResult b = run_mixed_state(parallel);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].mc->eps_b == b.points[i].mc->eps_b);
    CHECK(a.points[i].mc->sigma_a == b.points[i].mc->sigma_a);
    CHECK(a.points[i].mc->lhs_ozawa == b.points[i].mc->lhs_ozawa);
    CHECK(a.points[i].mc_spread->lhs_branciard == b.points[i].mc_spread->lhs_branciard);
    CHECK(a.points[i].repeat_seeds == b.points[i].repeat_seeds);
  }
}

TEST_CASE("bounds plane assembly") {
  const std::vector<double> grid = make_grid(0.0, 0.01, 1.0);
  const BoundsPlane plane = assemble_bounds_plane(kImpure, grid);

  CHECK(plane.c_ab == 0.25);
  CHECK(plane.sigma_a_spec == doctest::Approx(0.60905359982480146).epsilon(1e-14));
  CHECK(plane.sigma_a_pure == doctest::Approx(0.55483172941773641).epsilon(1e-14));
  CHECK(plane.curves.size() == 5);

  int heisenberg_curves = 0;
  for (const LabeledBoundCurve& labeled : plane.curves) {
    REQUIRE(labeled.curve.eps_a.size() == labeled.curve.eps_b.size());
    if (labeled.relation == "heisenberg") {
      ++heisenberg_curves;
      CHECK(labeled.sigma_variant == "none");
      for (double e : labeled.curve.eps_a) CHECK(e > 0.0);
      continue;
    }
    const bool spec_variant = labeled.sigma_variant == "spec";
    CHECK((spec_variant || labeled.sigma_variant == "pure_equivalent"));
    const double sigma_a = spec_variant ? plane.sigma_a_spec : plane.sigma_a_pure;
    const double sigma_b = spec_variant ? plane.sigma_b_spec : plane.sigma_b_pure;
    // Every emitted sample solves its relation's equality (truncated curve).
    for (std::size_t i = 0; i < labeled.curve.eps_a.size(); ++i) {
      const double ea = labeled.curve.eps_a[i];
      const double eb = labeled.curve.eps_b[i];
      const double lhs = labeled.relation == "ozawa"
                             ? ozawa_lhs(ea, eb, sigma_a, sigma_b)
                             : branciard_lhs(ea, eb, sigma_a, sigma_b, plane.c_ab);
      CHECK(std::abs(lhs - plane.c_ab) < 1e-9);
    }
    // Curve ends exactly on the eps_a axis at c / sigma_b.
    CHECK(labeled.curve.eps_b.back() == 0.0);
    CHECK(labeled.curve.eps_a.back() ==
          doctest::Approx(plane.c_ab / sigma_b).epsilon(1e-14));
    // First sample is the eps_a = 0 intercept at c / sigma_a.
    CHECK(labeled.curve.eps_a.front() == 0.0);
    CHECK(labeled.curve.eps_b.front() ==
          doctest::Approx(plane.c_ab / sigma_a).epsilon(1e-14));
  }
  CHECK(heisenberg_curves == 1);

  // Overlay points: one error-free operating point plus both default T-scans.
  std::size_t free_points = 0, nz_points = 0, mx_points = 0;
  for (const OverlayPoint& p : plane.points) {
    if (p.scenario == "error_free_theta0") ++free_points;
    if (p.scenario == "nonzero_error") ++nz_points;
    if (p.scenario == "mixed_state") ++mx_points;
  }
  CHECK(free_points == 1);
  CHECK(nz_points == default_t_grid().size());
  CHECK(mx_points == default_t_grid().size());
  CHECK(plane.points.size() == free_points + nz_points + mx_points);

  // The scan operating points respect both valid relations: they sit on or
  // above the "spec" sigma-variant ozawa curve height at their eps_a.
  for (const OverlayPoint& p : plane.points) {
    CHECK(p.eps_b + 1e-12 >=
          ozawa_bound_at(p.eps_a, plane.sigma_a_spec, plane.sigma_b_spec,
                         plane.c_ab));
  }
}
