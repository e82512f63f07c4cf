#include "emsr/magnetostatics.hpp"

#include <cmath>
#include <stdexcept>

namespace emsr {

DipoleSource::DipoleSource(double mu_, const Vec3& orientation_, const Vec3& position_)
    : mu(mu_), orientation(orientation_), position(position_) {
  if (mu < 0.0) throw std::domain_error("DipoleSource: mu must be >= 0");
  if (std::abs(orientation.norm() - 1.0) > 1e-12)
    throw std::domain_error("DipoleSource: orientation must be a unit vector");
}

Vec3 vector_potential(const Vec3& r, const DipoleSource& source) {
  const Vec3 rel = r - source.position;
  const double rn = rel.norm();
  if (rn == 0.0)
    throw std::domain_error("vector_potential: evaluation at the dipole position");
  const double pref = codata2018.mu0 * source.mu / (4.0 * pi * rn * rn * rn);
  return pref * source.orientation.cross(rel);
}

double ab_phase_analytic(double d, double mu) {
  if (!(d > 0.0)) throw std::domain_error("ab_phase_analytic: d must be > 0");
  if (mu < 0.0) throw std::domain_error("ab_phase_analytic: mu must be >= 0");
  const auto& k = codata2018;
  return k.e * k.mu0 * mu / (pi * k.hbar * d);
}

double ab_phase_quadrature(const BeamGeometry& geometry,
                           const DipoleSource& source,
                           const QuadratureOptions& opts) {
  const double d = geometry.d();
  if (!(d > 0.0))
    throw std::domain_error("ab_phase_quadrature: |d_vec| must be > 0");
  const Vec2 dv = geometry.d_vec;
  auto a_z = [&](double z) {
    return vector_potential(Vec3(dv.x(), dv.y(), z), source).z();
  };
  const QuadratureResult line = integrate_real_line(a_z, d, opts);
  return 2.0 * codata2018.e / codata2018.hbar * line.value;
}

Vec3 field_at_sample(double t, const BeamGeometry& geometry, Side side) {
  const double d = geometry.d();
  if (!(d > 0.0)) throw std::domain_error("field_at_sample: |d_vec| must be > 0");
  const auto& k = codata2018;
  const double v = geometry.kinematics.v;
  const double gl = geometry.kinematics.gamma_L;
  const double dt = t - geometry.t0;
  const double denom = std::pow(d * d + gl * gl * v * v * dt * dt, 1.5);
  const double bx = k.mu0 * k.e * gl * v * d / (4.0 * pi * denom);
  return Vec3((side == Side::L ? bx : -bx), 0.0, 0.0);
}

double deflection_analytic(double d, double delta_phi, const BeamKinematics& kin) {
  if (!(d > 0.0)) throw std::domain_error("deflection_analytic: d must be > 0");
  const auto& k = codata2018;
  return k.hbar * delta_phi / (2.0 * k.m_e * kin.gamma_L * kin.v * d);
}

Vec2 deflection_quadrature(const BeamGeometry& geometry,
                           const DipoleSource& source,
                           const QuadratureOptions& opts) {
  const double d = geometry.d();
  if (!(d > 0.0))
    throw std::domain_error("deflection_quadrature: |d_vec| must be > 0");
  const Vec2 dv = geometry.d_vec;

  // dA_z/dx and dA_z/dy along the undeflected line r = (d_x, d_y, z),
  // for A_z = mu0*mu/(4pi) * (n_x*y - n_y*x)/r^3 relative to the dipole.
  const Vec3 n = source.orientation;
  const double pref = codata2018.mu0 * source.mu / (4.0 * pi);
  auto grad_component = [&](int axis) {
    return [&, axis](double z) {
      const double x = dv.x() - source.position.x();
      const double y = dv.y() - source.position.y();
      const double zr = z - source.position.z();
      const double r2 = x * x + y * y + zr * zr;
      const double r = std::sqrt(r2);
      const double r3 = r * r2;
      const double r5 = r3 * r2;
      const double cross = n.x() * y - n.y() * x;
      if (axis == 0) return pref * (-n.y() / r3 - 3.0 * x * cross / r5);
      return pref * (n.x() / r3 - 3.0 * y * cross / r5);
    };
  };

  // Electron charge is -e: delta_p = -e * integral of grad_perp(A_z) dz,
  // which closes the identity delta_p = -(hbar/2) grad_d(delta_phi).
  const double px = -codata2018.e * integrate_real_line(grad_component(0), d, opts).value;
  const double py = -codata2018.e * integrate_real_line(grad_component(1), d, opts).value;
  return Vec2(px, py);
}

ValidityReport validity_limits(double d, const SpinSpecies& species,
                               double omega0, const BeamKinematics& kin,
                               double dz, double dr_perp) {
  if (!(d > 0.0) || !(dz > 0.0) || !(dr_perp > 0.0))
    throw std::domain_error("validity_limits: lengths must be > 0");
  if (omega0 < 0.0)
    throw std::domain_error("validity_limits: omega0 must be >= 0");
  const auto& k = codata2018;

  ValidityReport rep{};
  // 1/|d(delta_phi)/dd| for the analytic two-arm phase.
  rep.delta_y_max = 2.0 * pi * d * d / (k.mu0 * k.e * species.gamma);
  rep.kick_ratio = 2.0 * omega0 * dz / kin.v;
  rep.kick_ok = rep.kick_ratio <= 0.1;
  rep.flip_ratio = d / (8.0 * dr_perp);
  rep.flip_ok = rep.flip_ratio >= 1.0;
  return rep;
}

}  // namespace emsr
