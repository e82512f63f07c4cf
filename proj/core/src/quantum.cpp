#include "emsr/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace emsr {

namespace {
const cplx I_UNIT(0.0, 1.0);

Mat4 kron2(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Mat2 projector_R() {
  Mat2 p = Mat2::Zero();
  p(0, 0) = 1.0;
  return p;
}

Mat2 projector_L() {
  Mat2 p = Mat2::Zero();
  p(1, 1) = 1.0;
  return p;
}
}  // namespace

Mat2 pauli_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

Mat2 pauli_y() {
  Mat2 m;
  m << 0, -I_UNIT, I_UNIT, 0;
  return m;
}

Mat2 pauli_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

Mat2 pauli(const Vec3& n) {
  return n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z();
}

Vec3 rotate_bloch(const Vec3& s, const Vec3& axis, double angle) {
  if (std::abs(axis.norm() - 1.0) > 1e-12)
    throw std::domain_error("rotate_bloch: axis must be a unit vector");
  return Eigen::AngleAxisd(-angle, axis).toRotationMatrix() * s;
}

SpinState SpinState::from_bloch(const Vec3& s) {
  if (s.norm() > 1.0 + 1e-12)
    throw std::domain_error("SpinState: Bloch vector must have |s| <= 1");
  Mat2 rho = 0.5 * (Mat2::Identity() + s.x() * pauli_x() + s.y() * pauli_y() +
                    s.z() * pauli_z());
  return SpinState(rho);
}

SpinState SpinState::from_density(const Mat2& rho_in) {
  Mat2 rho = 0.5 * (rho_in + rho_in.adjoint().eval());  // clean tiny asymmetry
  if (std::abs(rho.trace().real() - 1.0) > 1e-9 ||
      std::abs(rho.trace().imag()) > 1e-12)
    throw std::domain_error("SpinState: trace(rho) must be 1");
  Eigen::SelfAdjointEigenSolver<Mat2> es(rho);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw std::domain_error("SpinState: rho must be positive semidefinite");
  return SpinState(rho);
}

SpinState SpinState::pure_along(const Vec3& direction) {
  const double n = direction.norm();
  if (n == 0.0) throw std::domain_error("SpinState: zero direction");
  return from_bloch(direction / n);
}

Vec3 SpinState::bloch() const {
  return Vec3((rho_ * pauli_x()).trace().real(),
              (rho_ * pauli_y()).trace().real(),
              (rho_ * pauli_z()).trace().real());
}

double SpinState::purity() const { return (rho_ * rho_).trace().real(); }

bool SpinState::is_pure(double tol) const {
  return std::abs(bloch().norm() - 1.0) <= tol;
}

BiasField bias_field(const SpinSpecies& species, double B0, const Vec3& axis) {
  if (B0 < 0.0) throw std::domain_error("bias_field: B0 must be >= 0");
  const double n = axis.norm();
  if (n == 0.0) throw std::domain_error("bias_field: zero axis");
  const double omega0 = species.gamma * B0;
  // omega0*hbar is the level splitting 2*mu*B0.
  return BiasField{B0, axis / n, omega0};
}

InteractionStrength interaction_strength(double d, const SpinSpecies& species) {
  if (!(d > 0.0)) throw std::domain_error("interaction_strength: d must be > 0");
  const auto& k = codata2018;
  const double theta = k.e * k.mu0 * species.mu / (2.0 * pi * k.hbar * d);
  return InteractionStrength{theta, d, species};
}

SpinState larmor_evolve(const SpinState& state, const BiasField& field, double t) {
  return SpinState::from_bloch(
      rotate_bloch(state.bloch(), field.axis, field.omega0 * t));
}

SpinState mw_pulse(const SpinState& state, const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (std::abs(n - 1.0) > 1e-12)
    throw std::domain_error("mw_pulse: axis must be a unit vector");
  return SpinState::from_bloch(rotate_bloch(state.bloch(), axis, angle));
}

double thermal_occupation(const BiasField& field, double temperature) {
  if (!(temperature > 0.0))
    throw std::domain_error("thermal_occupation: temperature must be > 0");
  const double x = codata2018.hbar * field.omega0 / (codata2018.k_B * temperature);
  return 1.0 / (1.0 + std::exp(x));
}

SpinState thermal_state(const BiasField& field, double temperature) {
  const double n_T = thermal_occupation(field, temperature);
  return SpinState::from_bloch((1.0 - 2.0 * n_T) * field.axis);
}

Vec3 sigma_x_axis_at(const BiasField& field, double t0) {
  // Heisenberg picture: sigma_x(t0) = m . sigma with m = R(axis, +omega0*t0) e_x.
  return Eigen::AngleAxisd(field.omega0 * t0, field.axis).toRotationMatrix() *
         Vec3::UnitX();
}

double sigma_x_expectation(const SpinState& state, const BiasField& field, double t0) {
  return sigma_x_axis_at(field, t0).dot(state.bloch());
}

PathState PathState::split(double phi) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return PathState{inv_sqrt2, std::exp(I_UNIT * phi) * inv_sqrt2, phi};
}

Mat2 CompositeState::spin_marginal() const {
  Mat2 out;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      out(s, t) = rho4(2 * s, 2 * t) + rho4(2 * s + 1, 2 * t + 1);
  return out;
}

Mat2 CompositeState::path_marginal() const {
  Mat2 out;
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      out(p, q) = rho4(p, q) + rho4(2 + p, 2 + q);
  return out;
}

Mat4 passage_unitary(double theta, double t0, const BiasField& field) {
  const Mat2 m = pauli(sigma_x_axis_at(field, t0));
  // (m.sigma)^2 = 1, so e^{+-i theta m.sigma} = cos(theta) +- i sin(theta) m.sigma.
  const Mat2 plus = std::cos(theta) * Mat2::Identity() +
                    I_UNIT * std::sin(theta) * m;
  const Mat2 minus = std::cos(theta) * Mat2::Identity() -
                     I_UNIT * std::sin(theta) * m;
  return kron2(plus, projector_R()) + kron2(minus, projector_L());
}

PortProbabilities port_probabilities(double theta, double phi, double sx_t0) {
  if (std::abs(sx_t0) > 1.0 + 1e-12)
    throw std::domain_error("port_probabilities: |<sigma_x>| must be <= 1");
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  const double p_plus =
      0.5 * (1.0 + std::cos(phi) * c + std::sin(phi) * s * sx_t0);
  return PortProbabilities{p_plus, 1.0 - p_plus};
}

double detection_probability(double theta, double phi, double sx_t0) {
  return port_probabilities(theta, phi, sx_t0).plus;
}

FringeObservables fringe_from_sx(double sx_t0, double theta) {
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  // atan2 keeps the principal value and takes the tan(2theta) -> inf limit
  // (theta near pi/4) to +-pi/2 * sign(sx) without a special case.
  const double delta_phi = std::atan2(sx_t0 * s, c);
  const double v = std::sqrt(std::max(0.0, 1.0 - (1.0 - sx_t0 * sx_t0) * s * s));
  return FringeObservables{delta_phi, v};
}

FringeObservables fringe_observables(const SpinState& state, double theta,
                                     double t0, const BiasField& field) {
  return fringe_from_sx(sigma_x_expectation(state, field, t0), theta);
}

CompositeState full_passage(const SpinState& spin, const PathState& path,
                            double theta, double t0, const BiasField& field) {
  Eigen::Vector2cd c = path.amplitudes();
  if (std::abs(c.squaredNorm() - 1.0) > 1e-12)
    throw std::domain_error("full_passage: path amplitudes must be normalized");
  const Mat2 rho_path = c * c.adjoint();
  const Mat4 u = passage_unitary(theta, t0, field);
  const Mat4 rho0 = kron2(spin.rho(), rho_path);
  return CompositeState{u * rho0 * u.adjoint()};
}

PortProbabilities port_probabilities(const CompositeState& state) {
  Eigen::Vector2cd plus;
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const Mat2 proj = plus * plus.adjoint();
  const Mat4 op = kron2(Mat2::Identity(), proj);
  const double p_plus = (op * state.rho4).trace().real();
  return PortProbabilities{p_plus, 1.0 - p_plus};
}

double entanglement_entropy(const CompositeState& state) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(state.path_marginal());
  double entropy = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda > 1e-300) entropy -= lambda * std::log(lambda);
  }
  return entropy;
}

double thermal_visibility_approx(double theta, const BiasField& field,
                                 double temperature) {
  const double n_T = thermal_occupation(field, temperature);
  return 1.0 - 8.0 * n_T * (1.0 - n_T) * theta * theta;
}

}  // namespace emsr
