#pragma once

#include <vector>

namespace epr {

/// One fully evaluated error-tradeoff configuration. The satisfied flags
/// compare each relation's left-hand side against c_ab with a 1e-9 slack.
struct TradeoffPoint {
  double eps_a = 0.0;
  double eps_b = 0.0;
  double sigma_a = 0.0;
  double sigma_b = 0.0;
  double c_ab = 0.0;
  double lhs_heisenberg = 0.0;
  double lhs_ozawa = 0.0;
  double lhs_branciard = 0.0;
  bool heisenberg_satisfied = false;
  bool ozawa_satisfied = false;
  bool branciard_satisfied = false;
};

/// eps(A) eps(B).
double heisenberg_lhs(double eps_a, double eps_b);

/// eps(A) eps(B) + eps(A) sigma(B) + sigma(A) eps(B).
double ozawa_lhs(double eps_a, double eps_b, double sigma_a, double sigma_b);

/// How a negative sigma^2(A) sigma^2(B) - c_ab^2 under the inner square root
/// is treated. Exact model inputs reject anything beyond fp noise (-1e-12) as
/// an invalid regime. Sampled moments of a state sitting on the minimum
/// uncertainty boundary legitimately fluctuate below it, so estimates are
/// truncated at the boundary, where the cross term vanishes.
enum class RadicandHandling { kExact, kSampled };

/// sqrt(eps_a^2 sigma_b^2 + sigma_a^2 eps_b^2
///      + 2 eps_a eps_b sqrt(sigma_a^2 sigma_b^2 - c_ab^2)).
double branciard_lhs(double eps_a, double eps_b, double sigma_a, double sigma_b,
                     double c_ab,
                     RadicandHandling handling = RadicandHandling::kExact);

TradeoffPoint make_tradeoff_point(double eps_a, double eps_b, double sigma_a,
                                  double sigma_b, double c_ab,
                                  RadicandHandling handling = RadicandHandling::kExact);

/// A lower-bound curve in the (eps_a, eps_b) plane.
struct BoundCurve {
  std::vector<double> eps_a;
  std::vector<double> eps_b;
};

/// Single-point bound solvers (equality solutions of the relations, clamped
/// to zero once the bound is already met by eps_b = 0).
double ozawa_bound_at(double eps_a, double sigma_a, double sigma_b, double c_ab);
double branciard_bound_at(double eps_a, double sigma_a, double sigma_b, double c_ab);

/// eps_b = c_ab / eps_a; rejects eps_a <= 0 where the bound diverges.
BoundCurve heisenberg_bound_curve(const std::vector<double>& eps_a_grid, double c_ab);
BoundCurve ozawa_bound_curve(const std::vector<double>& eps_a_grid, double sigma_a,
                             double sigma_b, double c_ab);
BoundCurve branciard_bound_curve(const std::vector<double>& eps_a_grid, double sigma_a,
                                 double sigma_b, double c_ab);

}  // namespace epr
