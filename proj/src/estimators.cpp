#include "epr/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "epr/sampler.hpp"

namespace epr {

double rms_error(const Eigen::Ref<const Eigen::VectorXd>& samples_c,
                 const Eigen::Ref<const Eigen::VectorXd>& samples_a) {
  if (samples_c.size() != samples_a.size()) {
    throw std::invalid_argument("rms_error: column lengths differ");
  }
  if (samples_c.size() < 2) {
    throw std::invalid_argument("rms_error: need at least 2 samples");
  }
  return std::sqrt((samples_c - samples_a).squaredNorm() /
                   static_cast<double>(samples_c.size()));
}

double std_dev(const Eigen::Ref<const Eigen::VectorXd>& samples) {
  if (samples.size() < 2) {
    throw std::invalid_argument("std_dev: need at least 2 samples");
  }
  const double mean = samples.mean();
  return std::sqrt((samples.array() - mean).square().sum() /
                   static_cast<double>(samples.size()));
}

ErrorStats analytic_stats(const GaussianState& state, const Eigen::VectorXd& obs_a,
                          const Eigen::VectorXd& obs_b, const Eigen::VectorXd& obs_c,
                          const Eigen::VectorXd& obs_d) {
  ErrorStats stats;
  stats.eps_a = std::sqrt(linear_combination_variance(state, obs_c - obs_a));
  stats.eps_b = std::sqrt(linear_combination_variance(state, obs_d - obs_b));
  stats.sigma_a = std::sqrt(linear_combination_variance(state, obs_a));
  stats.sigma_b = std::sqrt(linear_combination_variance(state, obs_b));
  stats.source = StatSource::kAnalytic;
  return stats;
}

ErrorStats monte_carlo_stats(const GaussianState& state, const Eigen::VectorXd& obs_a,
                             const Eigen::VectorXd& obs_b, const Eigen::VectorXd& obs_c,
                             const Eigen::VectorXd& obs_d, Eigen::Index n_shots,
                             std::uint64_t seed) {
  const SampleSet samples = sample_observables(
      state, {{"a", obs_a}, {"b", obs_b}, {"c", obs_c}, {"d", obs_d}}, n_shots, seed);
  ErrorStats stats;
  stats.eps_a = rms_error(samples.data.col(2), samples.data.col(0));
  stats.eps_b = rms_error(samples.data.col(3), samples.data.col(1));
  stats.sigma_a = std_dev(samples.data.col(0));
  stats.sigma_b = std_dev(samples.data.col(1));
  stats.source = StatSource::kMonteCarlo;
  stats.n_shots = n_shots;
  stats.seed = seed;
  return stats;
}

}  // namespace epr
