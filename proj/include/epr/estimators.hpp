#pragma once

#include <Eigen/Dense>

#include <cstdint>

#include "epr/gaussian_state.hpp"

namespace epr {

enum class StatSource { kAnalytic, kMonteCarlo };

/// The four statistics of one (state, observables) configuration:
/// eps_* are the root-mean-square approximation errors, sigma_* the
/// standard deviations of the target observables.
struct ErrorStats {
  double eps_a = 0.0;
  double eps_b = 0.0;
  double sigma_a = 0.0;
  double sigma_b = 0.0;
  StatSource source = StatSource::kAnalytic;
  Eigen::Index n_shots = 0;  // Monte Carlo only
  std::uint64_t seed = 0;    // Monte Carlo only
};

/// Root-mean-square difference sqrt(mean((c - a)^2)). Deliberately the raw
/// second moment of the difference, no mean subtraction.
double rms_error(const Eigen::Ref<const Eigen::VectorXd>& samples_c,
                 const Eigen::Ref<const Eigen::VectorXd>& samples_a);

/// Population standard deviation (1/n normalization).
double std_dev(const Eigen::Ref<const Eigen::VectorXd>& samples);

/// Exact statistics from covariance algebra: eps(A) = sqrt(var(C - A)),
/// eps(B) = sqrt(var(D - B)), sigma from the target observables directly.
ErrorStats analytic_stats(const GaussianState& state, const Eigen::VectorXd& obs_a,
                          const Eigen::VectorXd& obs_b, const Eigen::VectorXd& obs_c,
                          const Eigen::VectorXd& obs_d);

/// Same statistics estimated from a seeded joint sample of (A, B, C, D).
ErrorStats monte_carlo_stats(const GaussianState& state, const Eigen::VectorXd& obs_a,
                             const Eigen::VectorXd& obs_b, const Eigen::VectorXd& obs_c,
                             const Eigen::VectorXd& obs_d, Eigen::Index n_shots,
                             std::uint64_t seed);

}  // namespace epr
