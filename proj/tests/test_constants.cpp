#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "emsr/constants.hpp"

using namespace emsr;

TEST_CASE("constants match CODATA 2018") {
  struct Pin {
    const char* name;
    double actual;
    double expected;
  };
  const Pin pins[] = {
      {"e", codata2018.e, 1.602176634e-19},
      {"hbar", codata2018.hbar, 1.054571817e-34},
      {"mu0", codata2018.mu0, 1.25663706212e-6},
      {"m_e", codata2018.m_e, 9.1093837015e-31},
      {"m_p", codata2018.m_p, 1.67262192369e-27},
      {"c", codata2018.c, 299792458.0},
      {"k_B", codata2018.k_B, 1.380649e-23},
      {"mu_B", codata2018.mu_B, 9.2740100783e-24},
      {"mu_N", codata2018.mu_N, 5.0507837461e-27},
      {"r_e", codata2018.r_e, 2.8179403262e-15},
      {"g_s", codata2018.g_s, 2.00231930436256},
  };
  for (const auto& pin : pins) {
    CAPTURE(pin.name);
    CHECK(pin.actual == doctest::Approx(pin.expected).epsilon(1e-12));
  }
}

TEST_CASE("derived constant identities") {
  const auto& k = codata2018;
  // mu_B = e hbar / (2 m_e), ignoring g-factor corrections
  CHECK(std::abs(k.mu_B - k.e * k.hbar / (2.0 * k.m_e)) / k.mu_B < 1e-3);
  // r_e = e^2 mu0 / (4 pi m_e)
  CHECK(std::abs(k.r_e - k.e * k.e * k.mu0 / (4.0 * pi * k.m_e)) / k.r_e < 1e-6);
}

TEST_CASE("electron species") {
  const SpinSpecies e = electron_species();
  CHECK(e.gamma == doctest::Approx(1.76085963023e11).epsilon(1e-9));
  CHECK(e.gamma == doctest::Approx(2.0 * pi * 28.0e9).epsilon(1e-2));
  CHECK(e.mu == doctest::Approx(9.2847647043e-24).epsilon(1e-9));
  CHECK(e.mu == doctest::Approx(codata2018.g_s * codata2018.mu_B / 2.0).epsilon(1e-12));
  CHECK(e.spin == 0.5);
  CHECK(e.mu == doctest::Approx(e.gamma * codata2018.hbar * e.spin).epsilon(1e-14));

  const SpinSpecies nom = electron_species(GammaSource::nominal);
  CHECK(nom.gamma == doctest::Approx(2.0 * pi * 28.0e9).epsilon(1e-14));
}

TEST_CASE("proton species") {
  const SpinSpecies p = proton_species();
  CHECK(p.gamma == doctest::Approx(2.6752218744e8).epsilon(1e-10));
  CHECK(p.gamma == doctest::Approx(2.0 * pi * 42.6e6).epsilon(1e-2));
  CHECK(p.spin == 0.5);
  // proton magnetic moment
  CHECK(p.mu == doctest::Approx(1.41060679736e-26).epsilon(1e-8));
  // gamma ratio quoted against the electron
  const SpinSpecies e = electron_species();
  CHECK(p.gamma / e.gamma == doctest::Approx(1.52e-3).epsilon(1e-2));

  const SpinSpecies nom = proton_species(GammaSource::nominal);
  CHECK(nom.gamma == doctest::Approx(2.0 * pi * 42.6e6).epsilon(1e-14));
}

TEST_CASE("custom species validation") {
  CHECK_THROWS_AS(custom_species(-1.0, 2.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(custom_species(1e8, 2.0, 0.0), std::domain_error);
  const SpinSpecies s = custom_species(1e9, 2.0, 0.5, "x");
  CHECK(s.mu == doctest::Approx(1e9 * codata2018.hbar * 0.5).epsilon(1e-14));
}

TEST_CASE("beam kinematics at 200 keV") {
  const BeamKinematics kin = beam_kinematics(200e3);
  CHECK(kin.gamma_L == doctest::Approx(1.3914).epsilon(2e-4));
  CHECK(kin.v == doctest::Approx(2.085e8).epsilon(1e-3));
}

TEST_CASE("beam kinematics limits and round trip") {
  // non-relativistic limit: at 1 ueV, v = sqrt(2E/m) ~ 593 m/s
  const BeamKinematics slow = beam_kinematics(1e-6);
  CHECK(slow.gamma_L == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(slow.v == doctest::Approx(std::sqrt(2.0 * 1e-6 * codata2018.e /
                                            codata2018.m_e)).epsilon(1e-6));

  for (double e_kev : {1.0, 60.0, 200.0, 300.0, 1000.0}) {
    const BeamKinematics kin = beam_kinematics(e_kev * 1e3);
    const double beta = kin.v / codata2018.c;
    const double gamma_rt = 1.0 / std::sqrt(1.0 - beta * beta);
    CHECK(std::abs(gamma_rt - kin.gamma_L) / kin.gamma_L < 1e-12);
  }

  CHECK_THROWS_AS(beam_kinematics(0.0), std::domain_error);
  CHECK_THROWS_AS(beam_kinematics(-5.0), std::domain_error);
}
