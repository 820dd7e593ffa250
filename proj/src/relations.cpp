#include "epr/relations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace epr {

namespace {

constexpr double kSatisfiedTol = 1e-9;

// sigma_a^2 sigma_b^2 - c^2, clamped at zero. Exact inputs reject negatives
// beyond fp noise, where the relation's square root would be imaginary;
// sampled inputs are truncated at the boundary regardless of depth.
double cross_term_radicand(double sigma_a, double sigma_b, double c_ab,
                           RadicandHandling handling) {
  const double value = sigma_a * sigma_a * sigma_b * sigma_b - c_ab * c_ab;
  if (handling == RadicandHandling::kExact && value < -1e-12) {
    throw std::domain_error(
        "branciard: sigma^2(A) sigma^2(B) < c_ab^2 (invalid regime, value " +
        std::to_string(value) + ")");
  }
  return std::max(value, 0.0);
}

}  // namespace

double heisenberg_lhs(double eps_a, double eps_b) { return eps_a * eps_b; }

double ozawa_lhs(double eps_a, double eps_b, double sigma_a, double sigma_b) {
  return eps_a * eps_b + eps_a * sigma_b + sigma_a * eps_b;
}

double branciard_lhs(double eps_a, double eps_b, double sigma_a, double sigma_b,
                     double c_ab, RadicandHandling handling) {
  const double cross = cross_term_radicand(sigma_a, sigma_b, c_ab, handling);
  return std::sqrt(eps_a * eps_a * sigma_b * sigma_b +
                   sigma_a * sigma_a * eps_b * eps_b +
                   2.0 * eps_a * eps_b * std::sqrt(cross));
}

TradeoffPoint make_tradeoff_point(double eps_a, double eps_b, double sigma_a,
                                  double sigma_b, double c_ab,
                                  RadicandHandling handling) {
  TradeoffPoint point;
  point.eps_a = eps_a;
  point.eps_b = eps_b;
  point.sigma_a = sigma_a;
  point.sigma_b = sigma_b;
  point.c_ab = c_ab;
  point.lhs_heisenberg = heisenberg_lhs(eps_a, eps_b);
  point.lhs_ozawa = ozawa_lhs(eps_a, eps_b, sigma_a, sigma_b);
  point.lhs_branciard = branciard_lhs(eps_a, eps_b, sigma_a, sigma_b, c_ab, handling);
  point.heisenberg_satisfied = point.lhs_heisenberg >= c_ab - kSatisfiedTol;
  point.ozawa_satisfied = point.lhs_ozawa >= c_ab - kSatisfiedTol;
  point.branciard_satisfied = point.lhs_branciard >= c_ab - kSatisfiedTol;
  return point;
}

double ozawa_bound_at(double eps_a, double sigma_a, double sigma_b, double c_ab) {
  return std::max(0.0, (c_ab - eps_a * sigma_b) / (eps_a + sigma_a));
}

double branciard_bound_at(double eps_a, double sigma_a, double sigma_b, double c_ab) {
  const double cross =
      cross_term_radicand(sigma_a, sigma_b, c_ab, RadicandHandling::kExact);
  // Larger root of sigma_a^2 eps_b^2 + 2 eps_a sqrt(cross) eps_b
  // + (eps_a^2 sigma_b^2 - c_ab^2) = 0; its discriminant reduces to
  // c_ab^2 (sigma_a^2 - eps_a^2). No real root (eps_a > sigma_a) and a
  // negative larger root both mean the bound is already met at eps_b = 0.
  const double disc = c_ab * c_ab * (sigma_a * sigma_a - eps_a * eps_a);
  if (disc < 0.0) {
    return 0.0;
  }
  const double root =
      (std::sqrt(disc) - eps_a * std::sqrt(cross)) / (sigma_a * sigma_a);
  return std::max(0.0, root);
}

BoundCurve heisenberg_bound_curve(const std::vector<double>& eps_a_grid, double c_ab) {
  BoundCurve curve;
  curve.eps_a.reserve(eps_a_grid.size());
  curve.eps_b.reserve(eps_a_grid.size());
  for (double eps_a : eps_a_grid) {
    if (!(eps_a > 0.0)) {
      throw std::invalid_argument(
          "heisenberg_bound_curve: eps_a must be > 0 (bound diverges at 0)");
    }
    curve.eps_a.push_back(eps_a);
    curve.eps_b.push_back(c_ab / eps_a);
  }
  return curve;
}

BoundCurve ozawa_bound_curve(const std::vector<double>& eps_a_grid, double sigma_a,
                             double sigma_b, double c_ab) {
  if (!(sigma_a > 0.0) || !(sigma_b > 0.0)) {
    throw std::invalid_argument("ozawa_bound_curve: sigma values must be > 0");
  }
  BoundCurve curve;
  for (double eps_a : eps_a_grid) {
    curve.eps_a.push_back(eps_a);
    curve.eps_b.push_back(ozawa_bound_at(eps_a, sigma_a, sigma_b, c_ab));
  }
  return curve;
}

BoundCurve branciard_bound_curve(const std::vector<double>& eps_a_grid, double sigma_a,
                                 double sigma_b, double c_ab) {
  if (!(sigma_a > 0.0) || !(sigma_b > 0.0)) {
    throw std::invalid_argument("branciard_bound_curve: sigma values must be > 0");
  }
  BoundCurve curve;
  for (double eps_a : eps_a_grid) {
    curve.eps_a.push_back(eps_a);
    curve.eps_b.push_back(branciard_bound_at(eps_a, sigma_a, sigma_b, c_ab));
  }
  return curve;
}

}  // namespace epr
