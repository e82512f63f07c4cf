#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "emsr/magnetostatics.hpp"
#include "test_util.hpp"

using namespace emsr;
using emsr::testutil::random_unit_vector;

namespace {
const SpinSpecies electron = electron_species();
const BeamKinematics kin200 = beam_kinematics(200e3);

BeamGeometry geometry_at(double dx, double dy) {
  return BeamGeometry{Vec2(dx, dy), kin200, 0.0};
}

// Closed form for arbitrary in-plane offset and orientation:
// delta_phi = (e mu0 mu / pi hbar) (n_x d_y - n_y d_x)/d^2.
double phase_closed_form(const Vec2& d_vec, const Vec3& n, double mu) {
  const auto& k = codata2018;
  const double d2 = d_vec.squaredNorm();
  return k.e * k.mu0 * mu / (pi * k.hbar) *
         (n.x() * d_vec.y() - n.y() * d_vec.x()) / d2;
}
}  // namespace

TEST_CASE("vector potential geometry") {
  const DipoleSource src(electron.mu, Vec3::UnitX());
  const double d = 2e-10;

  // at r = (0, d, 0) the potential points along +z with magnitude mu0 mu/(4 pi d^2)
  const Vec3 a = vector_potential(Vec3(0, d, 0), src);
  CHECK(a.x() == 0.0);
  CHECK(a.y() == 0.0);
  CHECK(a.z() == doctest::Approx(codata2018.mu0 * electron.mu /
                                 (4.0 * pi * d * d)).epsilon(1e-12));

  // antisymmetry and the 1/r^2 decay along rays
  std::mt19937_64 gen(11);
  for (int i = 0; i < 50; ++i) {
    const Vec3 r = 1e-9 * random_unit_vector(gen);
    const Vec3 ap = vector_potential(r, src);
    const Vec3 am = vector_potential(-r, src);
    CHECK((ap + am).norm() <= 1e-15 * ap.norm());
    const Vec3 a2 = vector_potential(2.0 * r, src);
    if (ap.norm() > 0.0)
      CHECK(a2.norm() / ap.norm() == doctest::Approx(0.25).epsilon(1e-12));
  }

  CHECK_THROWS_AS(vector_potential(Vec3::Zero(), src), std::domain_error);
  CHECK_THROWS_AS(DipoleSource(1e-24, Vec3(1, 1, 0)), std::domain_error);
}

TEST_CASE("analytic phase pins") {
  // electron spin at d = 0.1 nm
  const double dphi = ab_phase_analytic(1e-10, electron.mu);
  CHECK(dphi == doctest::Approx(5.6424e-5).epsilon(1e-4));
  CHECK(2.0 * dphi == doctest::Approx(0.11e-3).epsilon(0.03));  // quoted to 2 digits

  // d = 1 nm
  CHECK(2.0 * ab_phase_analytic(1e-9, electron.mu) ==
        doctest::Approx(1.1e-5).epsilon(0.03));

  // exact 1/d scaling and the mu = 0 edge
  CHECK(ab_phase_analytic(2e-10, electron.mu) * 2.0 ==
        ab_phase_analytic(1e-10, electron.mu));
  CHECK(ab_phase_analytic(1e-10, 0.0) == 0.0);
  CHECK_THROWS_AS(ab_phase_analytic(0.0, electron.mu), std::domain_error);
}

TEST_CASE("quadrature phase matches the analytic form") {
  const DipoleSource src(electron.mu, Vec3::UnitX());

  SUBCASE("d on the y axis, orientation e_x") {
    for (double d : {5e-11, 1e-10, 1e-9, 1e-8}) {
      const double quad = ab_phase_quadrature(geometry_at(0.0, d), src);
      const double exact = ab_phase_analytic(d, electron.mu);
      CHECK(std::abs(quad - exact) / exact < 1e-9);
    }
  }

  SUBCASE("100 random distances and orientations, d_x = 0") {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> logd(std::log(0.05e-9),
                                                std::log(10e-9));
    for (int i = 0; i < 100; ++i) {
      const double d = std::exp(logd(gen));
      const Vec3 n = random_unit_vector(gen);
      const DipoleSource tilted(electron.mu, n);
      const double quad = ab_phase_quadrature(geometry_at(0.0, d), tilted);
      const double projected = n.x() * ab_phase_analytic(d, electron.mu);
      const double scale = ab_phase_analytic(d, electron.mu);
      if (std::abs(n.x()) > 1e-3)
        CHECK(std::abs(quad - projected) / std::abs(projected) < 1e-6);
      else
        CHECK(std::abs(quad - projected) < 1e-6 * scale);
    }
  }

  SUBCASE("general in-plane offset against the closed form") {
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int i = 0; i < 30; ++i) {
      Vec2 dv(uni(gen), uni(gen));
      if (dv.norm() < 0.1) dv = Vec2(0.3, -0.7);
      dv *= 1e-9;
      const Vec3 n = random_unit_vector(gen);
      const DipoleSource tilted(electron.mu, n);
      const double quad =
          ab_phase_quadrature(BeamGeometry{dv, kin200, 0.0}, tilted);
      const double exact = phase_closed_form(dv, n, electron.mu);
      const double scale = ab_phase_analytic(dv.norm(), electron.mu);
      CHECK(std::abs(quad - exact) < 1e-6 * scale);
    }
  }

  SUBCASE("in-beam orientation gives zero, and the phase is odd in n") {
    const DipoleSource along_z(electron.mu, Vec3::UnitZ());
    const double scale = ab_phase_analytic(1e-10, electron.mu);
    CHECK(std::abs(ab_phase_quadrature(geometry_at(0.0, 1e-10), along_z)) <
          1e-15 * scale);

    std::mt19937_64 gen(29);
    const Vec3 n = random_unit_vector(gen);
    const double plus = ab_phase_quadrature(
        geometry_at(0.0, 1e-10), DipoleSource(electron.mu, n));
    const double minus = ab_phase_quadrature(
        geometry_at(0.0, 1e-10), DipoleSource(electron.mu, -n));
    CHECK(plus == doctest::Approx(-minus).epsilon(1e-12));
  }
}

TEST_CASE("field at the sample") {
  const double d = 1e-10;
  const BeamGeometry geo = geometry_at(0.0, d);

  SUBCASE("time integral reproduces mu0 e/(2 pi d) and the analytic phase") {
    // substitute t = (d/(gamma_L v)) tan(u); field_at_sample handles t directly
    const double width = d / (kin200.gamma_L * kin200.v);
    const QuadratureResult integral = integrate_real_line(
        [&](double t) { return field_at_sample(t, geo, Side::L).x(); }, width);
    const double exact = codata2018.mu0 * codata2018.e / (2.0 * pi * d);
    CHECK(integral.value == doctest::Approx(exact).epsilon(1e-9));

    // 2 (mu/hbar) * integral = analytic two-arm phase
    const double phase =
        2.0 * electron.mu / codata2018.hbar * integral.value;
    CHECK(phase ==
          doctest::Approx(ab_phase_analytic(d, electron.mu)).epsilon(1e-9));
  }

  SUBCASE("sign, symmetry, and peak") {
    CHECK(field_at_sample(1e-19, geo, Side::L).x() ==
          doctest::Approx(field_at_sample(-1e-19, geo, Side::L).x()).epsilon(1e-12));
    CHECK(field_at_sample(0.0, geo, Side::R).x() ==
          doctest::Approx(-field_at_sample(0.0, geo, Side::L).x()).epsilon(1e-15));
    const double peak = codata2018.mu0 * codata2018.e * kin200.gamma_L *
                        kin200.v / (4.0 * pi * d * d);
    CHECK(field_at_sample(0.0, geo, Side::L).x() ==
          doctest::Approx(peak).epsilon(1e-12));
    CHECK(field_at_sample(0.0, geo, Side::L).y() == 0.0);
    CHECK(field_at_sample(0.0, geo, Side::L).z() == 0.0);
  }
}

TEST_CASE("deflection pins at 200 keV") {
  const double dphi01 = ab_phase_analytic(1e-10, electron.mu);
  const double alpha01 = deflection_analytic(1e-10, dphi01, kin200);
  CHECK(alpha01 == doctest::Approx(110e-9).epsilon(0.05));
  CHECK(alpha01 == doctest::Approx(1.1261e-7).epsilon(1e-3));

  const double dphi1 = ab_phase_analytic(1e-9, electron.mu);
  const double alpha1 = deflection_analytic(1e-9, dphi1, kin200);
  CHECK(alpha1 == doctest::Approx(1.1e-9).epsilon(0.05));

  CHECK(deflection_analytic(1e-10, 0.0, kin200) == 0.0);
}

TEST_CASE("momentum transfer equals the phase gradient") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  auto phase_at = [&](const Vec2& dv, const DipoleSource& src) {
    return ab_phase_quadrature(BeamGeometry{dv, kin200, 0.0}, src);
  };

  for (int i = 0; i < 12; ++i) {
    Vec2 dv(uni(gen), uni(gen));
    if (dv.norm() < 0.2) dv = Vec2(0.5, 0.4);
    dv *= 1e-9;
    const Vec3 n = random_unit_vector(gen);
    const DipoleSource src(electron.mu, n);
    const Vec2 dp = deflection_quadrature(BeamGeometry{dv, kin200, 0.0}, src);

    const double h = 1e-4 * dv.norm();
    const double gx = (phase_at(dv + Vec2(h, 0), src) -
                       phase_at(dv - Vec2(h, 0), src)) / (2.0 * h);
    const double gy = (phase_at(dv + Vec2(0, h), src) -
                       phase_at(dv - Vec2(0, h), src)) / (2.0 * h);
    const Vec2 grad_form = -0.5 * codata2018.hbar * Vec2(gx, gy);
    const double scale = codata2018.hbar *
                         ab_phase_analytic(dv.norm(), electron.mu) / dv.norm();
    CHECK(std::abs(dp.x() - grad_form.x()) < 1e-5 * scale);
    CHECK(std::abs(dp.y() - grad_form.y()) < 1e-5 * scale);
  }
}

TEST_CASE("displaced dipole keeps the force-gradient identity") {
  const Vec3 offset(0.2e-9, -0.1e-9, 0.3e-9);
  const DipoleSource src(electron.mu, Vec3(0.48, 0.6, 0.64).normalized(), offset);
  const Vec2 dv(0.9e-9, 0.5e-9);
  const Vec2 dp = deflection_quadrature(BeamGeometry{dv, kin200, 0.0}, src);

  auto phase_at = [&](const Vec2& at) {
    return ab_phase_quadrature(BeamGeometry{at, kin200, 0.0}, src);
  };
  const double h = 1e-4 * dv.norm();
  const Vec2 grad_form(
      -0.5 * codata2018.hbar *
          (phase_at(dv + Vec2(h, 0)) - phase_at(dv - Vec2(h, 0))) / (2.0 * h),
      -0.5 * codata2018.hbar *
          (phase_at(dv + Vec2(0, h)) - phase_at(dv - Vec2(0, h))) / (2.0 * h));
  const double scale =
      codata2018.hbar * ab_phase_analytic(dv.norm(), electron.mu) / dv.norm();
  CHECK(std::abs(dp.x() - grad_form.x()) < 1e-5 * scale);
  CHECK(std::abs(dp.y() - grad_form.y()) < 1e-5 * scale);
}

TEST_CASE("deflection magnitude identities on the y axis") {
  const double d = 1e-10;
  const DipoleSource src(electron.mu, Vec3::UnitX());
  const Vec2 dp = deflection_quadrature(geometry_at(0.0, d), src);
  const double dphi = ab_phase_analytic(d, electron.mu);

  // |dp| = hbar delta_phi / (2 d)
  CHECK(dp.norm() ==
        doctest::Approx(codata2018.hbar * dphi / (2.0 * d)).epsilon(1e-5));
  // alpha = |dp|/p0 matches the analytic deflection
  const double p0 = codata2018.m_e * kin200.gamma_L * kin200.v;
  CHECK(dp.norm() / p0 ==
        doctest::Approx(deflection_analytic(d, dphi, kin200)).epsilon(1e-5));

  // no moment, no deflection
  const DipoleSource off(0.0, Vec3::UnitX());
  CHECK(deflection_quadrature(geometry_at(0.0, d), off).norm() == 0.0);
}

TEST_CASE("validity limits") {
  const double omega0 = electron.gamma * 1.8;

  SUBCASE("delta_y_max at d = 1 nm is of order 200 um") {
    const ValidityReport rep =
        validity_limits(1e-9, electron, omega0, kin200, 1e-9, 0.05e-9);
    CHECK(rep.delta_y_max == doctest::Approx(1.7723e-4).epsilon(1e-3));
    CHECK(rep.delta_y_max > 1e-4);
    CHECK(rep.delta_y_max < 3e-4);
  }

  SUBCASE("spin-flip distance threshold is inclusive") {
    const double drp = 0.05e-9;
    const ValidityReport at = validity_limits(8.0 * drp, electron, omega0,
                                              kin200, 1e-9, drp);
    CHECK(at.flip_ratio == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(at.flip_ok);
    const ValidityReport below = validity_limits(8.0 * drp * 0.999, electron,
                                                 omega0, kin200, 1e-9, drp);
    CHECK_FALSE(below.flip_ok);
  }

  SUBCASE("momentum kick") {
    const ValidityReport still_ =
        validity_limits(1e-9, electron, 0.0, kin200, 1e-9, 0.05e-9);
    CHECK(still_.kick_ratio == 0.0);
    CHECK(still_.kick_ok);
    // ratio = 2 omega0 dz / v
    const ValidityReport rep =
        validity_limits(1e-9, electron, omega0, kin200, 1e-9, 0.05e-9);
    CHECK(rep.kick_ratio ==
          doctest::Approx(2.0 * omega0 * 1e-9 / kin200.v).epsilon(1e-12));
  }

  CHECK_THROWS_AS(validity_limits(0.0, electron, omega0, kin200, 1e-9, 1e-10),
                  std::domain_error);
}
