#include "epr/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace epr {

namespace {

constexpr double kEigTol = 1e-10;

}  // namespace

Eigen::VectorXd SampleSet::column(const std::string& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw std::invalid_argument("SampleSet: no observable labeled '" + label + "'");
  }
  return data.col(it - labels.begin());
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Top 53 bits -> uniform in [0, 1); u1 shifted into (0, 1] for the log.
  const double u1 = 1.0 - static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

SampleSet sample_observables(const GaussianState& state,
                             const std::vector<Observable>& observables,
                             Eigen::Index n_shots, std::uint64_t seed) {
  if (observables.empty()) {
    throw std::invalid_argument("sample_observables: need at least one observable");
  }
  if (n_shots < 1) {
    throw std::invalid_argument("sample_observables: n_shots must be >= 1");
  }
  const Eigen::Index dim = state.cov().rows();
  const Eigen::Index k = static_cast<Eigen::Index>(observables.size());
  SampleSet set;
  set.labels.reserve(observables.size());

  // Observables repeating an earlier coefficient vector share its sampled
  // column verbatim, so a perfectly correlated pair stays bitwise equal.
  std::vector<Eigen::Index> unique_of(k);
  std::vector<Eigen::Index> unique_rows;
  for (Eigen::Index i = 0; i < k; ++i) {
    const Observable& obs = observables[i];
    if (obs.coeffs.size() != dim) {
      throw std::invalid_argument("sample_observables: observable '" + obs.label +
                                  "' has coeff length " +
                                  std::to_string(obs.coeffs.size()) + ", expected " +
                                  std::to_string(dim));
    }
    set.labels.push_back(obs.label);
    Eigen::Index slot = static_cast<Eigen::Index>(unique_rows.size());
    for (Eigen::Index u = 0; u < static_cast<Eigen::Index>(unique_rows.size()); ++u) {
      if (observables[unique_rows[u]].coeffs == obs.coeffs) {
        slot = u;
        break;
      }
    }
    if (slot == static_cast<Eigen::Index>(unique_rows.size())) {
      unique_rows.push_back(i);
    }
    unique_of[i] = slot;
  }

  const Eigen::Index u = static_cast<Eigen::Index>(unique_rows.size());
  Eigen::MatrixXd projector(u, dim);
  for (Eigen::Index i = 0; i < u; ++i) {
    projector.row(i) = observables[unique_rows[i]].coeffs.transpose();
  }
  const Eigen::VectorXd mean = projector * state.mean();
  const Eigen::MatrixXd sigma = projector * state.cov() * projector.transpose();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
  Eigen::VectorXd eigvals = es.eigenvalues();
  for (Eigen::Index i = 0; i < u; ++i) {
    if (eigvals(i) < -kEigTol) {
      throw std::domain_error(
          "sample_observables: projected covariance is indefinite (eigenvalue " +
          std::to_string(eigvals(i)) + ")");
    }
    eigvals(i) = std::max(eigvals(i), 0.0);
  }
  const Eigen::MatrixXd factor =
      es.eigenvectors() * eigvals.cwiseSqrt().asDiagonal();

  // Standard normals are drawn column-major into z, then mixed by one GEMM.
  NormalStream stream(seed);
  Eigen::MatrixXd z(n_shots, u);
  for (Eigen::Index j = 0; j < u; ++j) {
    for (Eigen::Index i = 0; i < n_shots; ++i) {
      z(i, j) = stream.next();
    }
  }
  Eigen::MatrixXd unique_data(n_shots, u);
  unique_data.noalias() = z * factor.transpose();
  unique_data.rowwise() += mean.transpose();

  set.data.resize(n_shots, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    set.data.col(i) = unique_data.col(unique_of[i]);
  }
  set.seed = seed;
  set.n_shots = n_shots;
  return set;
}

}  // namespace epr
