#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "epr/gaussian_state.hpp"

namespace epr {

/// Paper-scale default record length.
inline constexpr Eigen::Index kDefaultShots = 500000;

/// A named linear form on the quadratures of a state.
struct Observable {
  std::string label;
  Eigen::VectorXd coeffs;
};

/// Joint quadrature record: one row per shot, one column per observable.
struct SampleSet {
  std::vector<std::string> labels;
  Eigen::MatrixXd data;  // n_shots x n_observables
  std::uint64_t seed = 0;
  Eigen::Index n_shots = 0;

  Eigen::VectorXd column(const std::string& label) const;
};

/// Deterministic stream split: splitmix64 finalizer over seed + stream.
/// Scans derive per-grid-point seeds as mix_seed(mix_seed(base, scenario_tag),
/// grid_index) and per-repeat seeds as mix_seed(point_seed, repeat_index), so
/// parallel and serial evaluation orders draw identical streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded standard-normal stream: mt19937_64 (portable output sequence)
/// mapped through Box-Muller. std::normal_distribution is avoided because its
/// algorithm is implementation-defined and would break cross-platform
/// reproducibility of fixtures.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Draws n_shots i.i.d. rows from the joint normal of the listed linear
/// forms: mean M mu, covariance M cov M^T with M stacking the coefficient
/// vectors. The projected covariance may be rank deficient; eigenvalues in
/// [-1e-10, 0) are clamped to zero and anything below -1e-10 is rejected.
/// Identical (state, observables, n_shots, seed) reproduce bit-identical data.
SampleSet sample_observables(const GaussianState& state,
                             const std::vector<Observable>& observables,
                             Eigen::Index n_shots, std::uint64_t seed);

}  // namespace epr
