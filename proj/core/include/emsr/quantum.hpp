#pragma once

// Spin (x) path two-qubit core: spin-1/2 density matrices, Larmor
// precession, microwave pulses, the stroboscopic passage unitary, detection
// probabilities and fringe observables.
//
// Rotation convention, fixed once for the whole library: rotating by angle
// a about unit axis n maps the Bloch vector with R(n, -a). Free precession
// uses a = omega0*t, so for n = e_z
//     <sigma_x(t)> = s_x cos(omega0 t) + s_y sin(omega0 t),
// and a pi/2 pulse about e_x takes e_z to +e_y, which under e_z precession
// gives <sigma_x(t0)> = s_z sin(omega0 t0). Pulses and precession share the
// same sense.

#include <complex>

#include <Eigen/Dense>

#include "emsr/constants.hpp"
#include "emsr/magnetostatics.hpp"

namespace emsr {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
Mat2 pauli(const Vec3& n);  ///< n . sigma

/// Bloch-vector rotation by angle about axis in the library convention
/// (R(axis, -angle)).
Vec3 rotate_bloch(const Vec3& s, const Vec3& axis, double angle);

/// Spin-1/2 state as a density matrix; the Bloch vector is the derived view.
class SpinState {
 public:
  static SpinState from_bloch(const Vec3& s);
  static SpinState from_density(const Mat2& rho);
  static SpinState pure_along(const Vec3& direction);

  const Mat2& rho() const { return rho_; }
  Vec3 bloch() const;
  double sx() const { return bloch().x(); }
  double purity() const;  ///< tr(rho^2)
  bool is_pure(double tol = 1e-9) const;

 private:
  explicit SpinState(const Mat2& rho) : rho_(rho) {}
  Mat2 rho_;
};

/// Static bias field: magnitude, axis, and the spin-resonance (Larmor)
/// frequency omega0 = gamma*B0. Note omega0*hbar equals the level splitting
/// 2*mu*B0 of the two spin states.
struct BiasField {
  double B0;     ///< [T]
  Vec3 axis;     ///< unit
  double omega0; ///< [rad/s]
};

BiasField bias_field(const SpinSpecies& species, double B0, const Vec3& axis);

/// Dimensionless coupling theta = e*mu0*mu/(2*pi*hbar*d) of one passage.
struct InteractionStrength {
  double theta;
  double d;
  SpinSpecies species;
};

InteractionStrength interaction_strength(double d, const SpinSpecies& species);

SpinState larmor_evolve(const SpinState& state, const BiasField& field, double t);

SpinState mw_pulse(const SpinState& state, const Vec3& axis, double angle);

/// Thermal mixture along the field axis with excited-state population
/// n_T = 1/(1 + exp(hbar*omega0/(k_B T))); polarization |s| = 1 - 2*n_T.
SpinState thermal_state(const BiasField& field, double temperature);

/// Excited-state population n_T above. Throws for T <= 0.
double thermal_occupation(const BiasField& field, double temperature);

/// Unit vector m(t0) with sigma_x(t0) = m . sigma (Heisenberg evolution of
/// sigma_x under the bias field).
Vec3 sigma_x_axis_at(const BiasField& field, double t0);

/// <sigma_x(t0)> for the given state.
double sigma_x_expectation(const SpinState& state, const BiasField& field, double t0);

/// Electron path qubit in the {|R>, |L>} basis.
struct PathState {
  cplx c_R;
  cplx c_L;
  double external_phase = 0.0;  ///< [rad]

  /// (|R> + e^{i phi} |L>)/sqrt(2) after the first splitter.
  static PathState split(double phi);

  Eigen::Vector2cd amplitudes() const { return {c_R, c_L}; }
};

/// Spin (x) path state; basis index 2*s + p with path R = 0, L = 1.
struct CompositeState {
  Mat4 rho4;

  Mat2 spin_marginal() const;
  Mat2 path_marginal() const;
};

/// Passage unitary, block diagonal in the path basis:
///   U = e^{+i theta sigma_x(t0)} (x) |R><R|  +  e^{-i theta sigma_x(t0)} (x) |L><L|.
/// The sign pairing follows the field the sample sees (+B_x on side L,
/// -B_x on side R), which makes the fitted fringe shift equal
/// +atan2(<sigma_x(t0)> sin 2theta, cos 2theta).
Mat4 passage_unitary(double theta, double t0, const BiasField& field);

struct PortProbabilities {
  double plus;
  double minus;
};

/// Closed-form detection probabilities at the two ports:
///   p+ = (1/2)[1 + V cos(phi - delta_phi)],  p- = 1 - p+,
/// with delta_phi = atan2(sx*sin 2theta, cos 2theta) and
/// V = sqrt(1 - (1 - sx^2) sin^2 2theta).
PortProbabilities port_probabilities(double theta, double phi, double sx_t0);
double detection_probability(double theta, double phi, double sx_t0);

struct FringeObservables {
  double delta_phi;   ///< [rad]
  double visibility;  ///< in [0, 1]
};

/// (delta_phi, V) from <sigma_x(t0)> alone.
FringeObservables fringe_from_sx(double sx_t0, double theta);

FringeObservables fringe_observables(const SpinState& state, double theta,
                                     double t0, const BiasField& field);

/// Apply the passage unitary to spin (x) path.
CompositeState full_passage(const SpinState& spin, const PathState& path,
                            double theta, double t0, const BiasField& field);

/// Port probabilities of a composite state, projecting the path onto
/// |+-> = (|R> +- |L>)/sqrt(2).
PortProbabilities port_probabilities(const CompositeState& state);

/// Entanglement entropy (von Neumann entropy of the path marginal), [nats].
/// Meaningful for pure composite states.
double entanglement_entropy(const CompositeState& state);

/// Quadratic thermal visibility 1 - 8*n_T*(1-n_T)*theta^2 for a bias along
/// the interferometer normal (n = e_x) and theta << 1.
double thermal_visibility_approx(double theta, const BiasField& field,
                                 double temperature);

}  // namespace emsr
