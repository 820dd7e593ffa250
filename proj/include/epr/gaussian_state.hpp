#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace epr {

/// Quadrature convention used throughout: x = (a + a^dag)/2 and
/// p = (a - a^dag)/(2i), so [x, p] = i/2, the vacuum variance is 1/4 and
/// the commutator bound for an (x, p) pair is |<[x,p]>|/2 = 1/4.
struct QuadratureConvention {
  static constexpr double vacuum_variance = 0.25;
  static constexpr double commutator_bound = 0.25;
};

/// Description of the two-mode squeezed resource. Either a pure squeezing
/// parameter r >= 0, or an impure pair of dB levels for the squeezed and
/// antisqueezed joint quadratures (squeezing_db <= 0 <= antisqueezing_db,
/// with antisqueezing_db >= -squeezing_db so the state stays physical).
class SqueezingSpec {
 public:
  static SqueezingSpec pure(double r);
  static SqueezingSpec impure(double squeezing_db, double antisqueezing_db);

  bool is_pure() const { return pure_; }
  /// Squeezing parameter; for an impure spec this is the pure-equivalent
  /// r = ln(10) * |squeezing_db| / 20 derived from the squeezed level.
  double r() const;
  double squeezing_db() const { return squeezing_db_; }
  double antisqueezing_db() const { return antisqueezing_db_; }

  /// Variance of the squeezed joint quadratures (x1+x2)/sqrt(2), (p1-p2)/sqrt(2).
  double squeezed_variance() const;
  /// Variance of the antisqueezed joint quadratures.
  double antisqueezed_variance() const;

 private:
  SqueezingSpec() = default;
  bool pure_ = true;
  double squeezing_db_ = 0.0;      // <= 0
  double antisqueezing_db_ = 0.0;  // >= 0
};

/// Zero-based quadrature indices in the global xpxp ordering
/// (x_0, p_0, x_1, p_1, ...).
inline Eigen::Index x_index(int mode) { return 2 * static_cast<Eigen::Index>(mode); }
inline Eigen::Index p_index(int mode) { return 2 * static_cast<Eigen::Index>(mode) + 1; }

/// A Gaussian state of n quadrature modes, held as first and second moments.
/// Quadrature ordering is x_0, p_0, x_1, p_1, ... and the covariance is
/// dimensionless with vacuum = (1/4) I. Instances are immutable; the
/// channel operations below return new states.
class GaussianState {
 public:
  /// Validates dimensions, symmetry (1e-12 entrywise) and positive
  /// semidefiniteness (smallest eigenvalue >= -1e-10).
  GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  int n_modes() const { return n_modes_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }

  /// Uncertainty (physicality) condition cov + (i/4) Omega >= 0, checked via
  /// the smallest eigenvalue of the Hermitian matrix being >= -tol.
  bool is_physical(double tol = 1e-10) const;

 private:
  int n_modes_;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

/// Standard symplectic form for n modes in xpxp ordering:
/// block diag of [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int n_modes);

/// n-mode vacuum: zero mean, cov = (1/4) I.
GaussianState vacuum(int n_modes);

/// Two-mode squeezed (EPR) state in the deamplification convention:
/// (x1+x2)/sqrt(2) and (p1-p2)/sqrt(2) carry the squeezed variance,
/// (x1-x2)/sqrt(2) and (p1+p2)/sqrt(2) the antisqueezed one.
GaussianState epr_state(const SqueezingSpec& spec);

/// Phase rotation of one mode: x' = x cos(theta) - p sin(theta),
/// p' = x sin(theta) + p cos(theta).
GaussianState phase_rotate(const GaussianState& state, int mode, double theta);

/// Pure loss channel of transmission T in [0, 1] on one mode, realized as a
/// beamsplitter against a fresh vacuum ancilla followed by discarding the
/// ancilla. Closed form: the mode's cov block maps to T*block + (1-T)/4 * I,
/// cross covariances and the mode's mean scale by sqrt(T).
GaussianState pure_loss(const GaussianState& state, int mode, double transmission);

/// Tensor product (block-diagonal covariance, concatenated means).
GaussianState tensor_product(const GaussianState& a, const GaussianState& b);

/// Partial trace down to the listed modes (kept in the given order).
GaussianState reduce_to_modes(const GaussianState& state, const std::vector<int>& keep);

/// Variance of the linear form coeffs . (x_0, p_0, ...): coeffs^T cov coeffs.
/// Tiny negative results (>= -1e-12) are clamped to zero.
double linear_combination_variance(const GaussianState& state,
                                   const Eigen::VectorXd& coeffs);

/// Coefficient vectors selecting a single quadrature.
Eigen::VectorXd x_coeff(int n_modes, int mode);
Eigen::VectorXd p_coeff(int n_modes, int mode);

}  // namespace epr
