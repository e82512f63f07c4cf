#pragma once

// Classical electron-dipole interaction: dipole vector potential, the
// two-arm interferometric phase (closed form and by quadrature along the
// trajectory), the time-dependent field the moving electron produces at the
// sample, the far-field deflection, and the wave-packet validity limits.

#include <Eigen/Dense>

#include "emsr/constants.hpp"
#include "emsr/quadrature.hpp"

namespace emsr {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

struct DipoleSource {
  double mu;         ///< moment magnitude [J/T]
  Vec3 orientation;  ///< unit vector
  Vec3 position;     ///< [m]

  DipoleSource(double mu_, const Vec3& orientation_,
               const Vec3& position_ = Vec3::Zero());
};

/// Beam passing the sample: transverse offset of the arm from the dipole in
/// the xy-plane, the electron kinematics, and the time of closest approach.
struct BeamGeometry {
  Vec2 d_vec;  ///< (d_x, d_y) [m]
  BeamKinematics kinematics;
  double t0 = 0.0;  ///< [s]

  double d() const { return d_vec.norm(); }
};

/// A(r) of a point dipole, [T m]. Throws std::domain_error at the dipole
/// position.
Vec3 vector_potential(const Vec3& r, const DipoleSource& source);

/// Two-arm phase difference e*mu0*mu/(pi*hbar*d) for a dipole along e_x
/// centered between arms at +-d. Equals 2*theta of the coupling strength.
double ab_phase_analytic(double d, double mu);

/// Same phase by adaptive quadrature of A_z along the straight trajectory
/// through d_vec, for arbitrary dipole orientation and in-plane offset.
double ab_phase_quadrature(const BeamGeometry& geometry,
                           const DipoleSource& source,
                           const QuadratureOptions& opts = {});

enum class Side { L, R };

/// Magnetic field of the passing electron at the sample, +x for side L and
/// -x for side R. [T]
Vec3 field_at_sample(double t, const BeamGeometry& geometry, Side side);

/// Far-field deflection angle hbar*delta_phi/(2 m gamma_L v d) for the
/// single-arm phase gradient. [rad]
double deflection_analytic(double d, double delta_phi, const BeamKinematics& kin);

/// Transverse momentum transferred to the electron, from the Lorentz force
/// integrated along the undeflected trajectory. Equals -(hbar/2) times the
/// gradient of ab_phase_quadrature with respect to d_vec. [kg m/s]
Vec2 deflection_quadrature(const BeamGeometry& geometry,
                           const DipoleSource& source,
                           const QuadratureOptions& opts = {});

/// Wave-packet validity report. The momentum-kick condition requires the
/// recoil momentum hbar*omega0/v to stay well below the longitudinal spread
/// hbar/(2*dz); the default pass margin is a factor of 10. The spin-flip
/// condition d >= 8*dr_perp is a sharp, inclusive threshold.
struct ValidityReport {
  double delta_y_max;  ///< max transverse focus before arm overlap degrades [m]
  double kick_ratio;   ///< (hbar*omega0/v) / (hbar/(2*dz)); ok when <= 0.1
  bool kick_ok;
  double flip_ratio;   ///< d / (8*dr_perp); ok when >= 1
  bool flip_ok;
};

ValidityReport validity_limits(double d, const SpinSpecies& species,
                               double omega0, const BeamKinematics& kin,
                               double dz, double dr_perp);

}  // namespace emsr
