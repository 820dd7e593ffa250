#include "epr/gaussian_state.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace epr {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kPsdTol = 1e-10;

void check_mode(const GaussianState& state, int mode, const char* op) {
  if (mode < 0 || mode >= state.n_modes()) {
    throw std::invalid_argument(std::string(op) + ": mode index " +
                                std::to_string(mode) + " out of range for " +
                                std::to_string(state.n_modes()) + " mode(s)");
  }
}

}  // namespace

SqueezingSpec SqueezingSpec::pure(double r) {
  if (!(r >= 0.0)) {
    throw std::invalid_argument("SqueezingSpec: r must be >= 0");
  }
  SqueezingSpec spec;
  spec.pure_ = true;
  // dB levels equivalent to the pure parameterization: e^{+-2r}/4.
  spec.antisqueezing_db_ = 20.0 * r / std::log(10.0);
  spec.squeezing_db_ = -spec.antisqueezing_db_;
  return spec;
}

SqueezingSpec SqueezingSpec::impure(double squeezing_db, double antisqueezing_db) {
  if (!(squeezing_db <= 0.0)) {
    throw std::invalid_argument("SqueezingSpec: squeezing_db must be <= 0");
  }
  if (!(antisqueezing_db >= 0.0)) {
    throw std::invalid_argument("SqueezingSpec: antisqueezing_db must be >= 0");
  }
  if (antisqueezing_db < -squeezing_db) {
    // V+ V- >= 1/16 is required for the resulting state to be physical.
    throw std::invalid_argument(
        "SqueezingSpec: antisqueezing_db must be >= |squeezing_db|");
  }
  SqueezingSpec spec;
  spec.pure_ = false;
  spec.squeezing_db_ = squeezing_db;
  spec.antisqueezing_db_ = antisqueezing_db;
  return spec;
}

double SqueezingSpec::r() const { return -std::log(10.0) * squeezing_db_ / 20.0; }

double SqueezingSpec::squeezed_variance() const {
  return std::pow(10.0, squeezing_db_ / 10.0) / 4.0;
}

double SqueezingSpec::antisqueezed_variance() const {
  return std::pow(10.0, antisqueezing_db_ / 10.0) / 4.0;
}

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  const Eigen::Index dim = cov_.rows();
  if (dim == 0 || dim % 2 != 0 || cov_.cols() != dim) {
    throw std::invalid_argument("GaussianState: cov must be square with even size");
  }
  if (mean_.size() != dim) {
    throw std::invalid_argument("GaussianState: mean length must match cov size");
  }
  n_modes_ = static_cast<int>(dim / 2);
  const double asym = (cov_ - cov_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol) {
    throw std::invalid_argument("GaussianState: cov not symmetric (max |C - C^T| = " +
                                std::to_string(asym) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    throw std::invalid_argument("GaussianState: cov is not positive semidefinite");
  }
}

bool GaussianState::is_physical(double tol) const {
  const Eigen::Index dim = cov_.rows();
  Eigen::MatrixXcd h = cov_.cast<std::complex<double>>();
  h += std::complex<double>(0.0, 0.25) * symplectic_form(n_modes_).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  (void)dim;
  return es.eigenvalues().minCoeff() >= -tol;
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int m = 0; m < n_modes; ++m) {
    omega(x_index(m), p_index(m)) = 1.0;
    omega(p_index(m), x_index(m)) = -1.0;
  }
  return omega;
}

GaussianState vacuum(int n_modes) {
  if (n_modes < 1) {
    throw std::invalid_argument("vacuum: n_modes must be >= 1");
  }
  const Eigen::Index dim = 2 * static_cast<Eigen::Index>(n_modes);
  return GaussianState(Eigen::VectorXd::Zero(dim),
                       QuadratureConvention::vacuum_variance *
                           Eigen::MatrixXd::Identity(dim, dim));
}

GaussianState epr_state(const SqueezingSpec& spec) {
  const double v_minus = spec.squeezed_variance();
  const double v_plus = spec.antisqueezed_variance();
  const double single = 0.5 * (v_plus + v_minus);  // sigma^2 of every quadrature
  const double cx = 0.5 * (v_minus - v_plus);      // cov(x1, x2)
  const double cp = 0.5 * (v_plus - v_minus);      // cov(p1, p2)

  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(4, 4);
  cov(0, 0) = cov(1, 1) = cov(2, 2) = cov(3, 3) = single;
  cov(0, 2) = cov(2, 0) = cx;
  cov(1, 3) = cov(3, 1) = cp;
  return GaussianState(Eigen::VectorXd::Zero(4), std::move(cov));
}

GaussianState phase_rotate(const GaussianState& state, int mode, double theta) {
  check_mode(state, mode, "phase_rotate");
  const Eigen::Index dim = 2 * static_cast<Eigen::Index>(state.n_modes());
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(dim, dim);
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  const Eigen::Index ix = x_index(mode);
  const Eigen::Index ip = p_index(mode);
  s(ix, ix) = c;
  s(ix, ip) = -sn;
  s(ip, ix) = sn;
  s(ip, ip) = c;
  return GaussianState(s * state.mean(), s * state.cov() * s.transpose());
}

GaussianState pure_loss(const GaussianState& state, int mode, double transmission) {
  check_mode(state, mode, "pure_loss");
  if (!(transmission >= 0.0 && transmission <= 1.0)) {
    throw std::invalid_argument("pure_loss: transmission must be in [0, 1]");
  }
  // Beamsplitter against a fresh vacuum ancilla, then discard the ancilla.
  GaussianState joint = tensor_product(state, vacuum(1));
  const int ancilla = state.n_modes();
  const Eigen::Index dim = 2 * static_cast<Eigen::Index>(joint.n_modes());
  const double t = std::sqrt(transmission);
  const double rr = std::sqrt(1.0 - transmission);

  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(dim, dim);
  for (auto [im, ia] : {std::pair{x_index(mode), x_index(ancilla)},
                        std::pair{p_index(mode), p_index(ancilla)}}) {
    s(im, im) = t;
    s(im, ia) = rr;
    s(ia, im) = -rr;
    s(ia, ia) = t;
  }
  GaussianState mixed(s * joint.mean(), s * joint.cov() * s.transpose());

  std::vector<int> keep(state.n_modes());
  for (int m = 0; m < state.n_modes(); ++m) keep[m] = m;
  return reduce_to_modes(mixed, keep);
}

GaussianState tensor_product(const GaussianState& a, const GaussianState& b) {
  const Eigen::Index da = 2 * static_cast<Eigen::Index>(a.n_modes());
  const Eigen::Index db = 2 * static_cast<Eigen::Index>(b.n_modes());
  Eigen::VectorXd mean(da + db);
  mean << a.mean(), b.mean();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(da + db, da + db);
  cov.topLeftCorner(da, da) = a.cov();
  cov.bottomRightCorner(db, db) = b.cov();
  return GaussianState(std::move(mean), std::move(cov));
}

GaussianState reduce_to_modes(const GaussianState& state, const std::vector<int>& keep) {
  if (keep.empty()) {
    throw std::invalid_argument("reduce_to_modes: must keep at least one mode");
  }
  std::vector<Eigen::Index> idx;
  idx.reserve(2 * keep.size());
  for (int m : keep) {
    check_mode(state, m, "reduce_to_modes");
    idx.push_back(x_index(m));
    idx.push_back(p_index(m));
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(idx.size());
  Eigen::VectorXd mean(dim);
  Eigen::MatrixXd cov(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    mean(i) = state.mean()(idx[i]);
    for (Eigen::Index j = 0; j < dim; ++j) {
      cov(i, j) = state.cov()(idx[i], idx[j]);
    }
  }
  return GaussianState(std::move(mean), std::move(cov));
}

double linear_combination_variance(const GaussianState& state,
                                   const Eigen::VectorXd& coeffs) {
  if (coeffs.size() != state.cov().rows()) {
    throw std::invalid_argument("linear_combination_variance: coeffs length " +
                                std::to_string(coeffs.size()) + " != " +
                                std::to_string(state.cov().rows()));
  }
  double v = coeffs.dot(state.cov() * coeffs);
  if (v < 0.0) {
    if (v < -1e-12) {
      throw std::domain_error("linear_combination_variance: negative variance " +
                              std::to_string(v));
    }
    v = 0.0;
  }
  return v;
}

Eigen::VectorXd x_coeff(int n_modes, int mode) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * static_cast<Eigen::Index>(n_modes));
  c(x_index(mode)) = 1.0;
  return c;
}

Eigen::VectorXd p_coeff(int n_modes, int mode) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * static_cast<Eigen::Index>(n_modes));
  c(p_index(mode)) = 1.0;
  return c;
}

}  // namespace epr
