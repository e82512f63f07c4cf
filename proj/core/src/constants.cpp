#include "emsr/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace emsr {

namespace {

SpinSpecies make_species(std::string name, double gamma, double g, double spin) {
  if (gamma <= 0.0) throw std::domain_error("spin species: gamma must be > 0");
  if (spin <= 0.0) throw std::domain_error("spin species: spin must be > 0");
  return SpinSpecies{std::move(name), gamma, gamma * codata2018.hbar * spin, spin, g};
}

// CODATA 2018 gyromagnetic ratios.
constexpr double gamma_p_codata = 2.6752218744e8;  // proton [rad/s/T]
constexpr double g_p_codata = 5.5856946893;

}  // namespace

SpinSpecies electron_species(GammaSource src) {
  const auto& k = codata2018;
  const double gamma = src == GammaSource::codata
                           ? k.g_s * k.mu_B / k.hbar  // 1.76085963e11
                           : 2.0 * pi * 28.0e9;
  const double g = gamma * k.hbar / k.mu_B;
  return make_species("electron", gamma, g, 0.5);
}

SpinSpecies proton_species(GammaSource src) {
  const auto& k = codata2018;
  const double gamma =
      src == GammaSource::codata ? gamma_p_codata : 2.0 * pi * 42.6e6;
  const double g = src == GammaSource::codata ? g_p_codata : gamma * k.hbar / k.mu_N;
  return make_species("proton", gamma, g, 0.5);
}

SpinSpecies custom_species(double gamma, double g, double spin, const std::string& name) {
  return make_species(name, gamma, g, spin);
}

BeamKinematics beam_kinematics(double kinetic_energy_ev) {
  if (!(kinetic_energy_ev > 0.0))
    throw std::domain_error("beam_kinematics: kinetic energy must be > 0");
  const auto& k = codata2018;
  const double rest_energy = k.m_e * k.c * k.c;
  const double ratio = kinetic_energy_ev * k.e / rest_energy;  // gamma_L - 1
  const double gamma_L = 1.0 + ratio;
  // v/c = sqrt(gamma^2 - 1)/gamma with gamma^2 - 1 = ratio*(gamma + 1),
  // which avoids cancellation in the non-relativistic limit
  const double v = k.c * std::sqrt(ratio * (gamma_L + 1.0)) / gamma_L;
  return BeamKinematics{kinetic_energy_ev, v, gamma_L};
}

}  // namespace emsr
