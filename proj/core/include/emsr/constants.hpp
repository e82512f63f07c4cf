#pragma once

// Physical constants (CODATA 2018), spin species, and relativistic beam
// kinematics. Everything downstream computes in SI; unit conversions live
// at the CLI boundary only.

#include <string>

namespace emsr {

struct PhysicalConstants {
  double e;     ///< elementary charge [C]
  double hbar;  ///< reduced Planck constant [J s]
  double mu0;   ///< vacuum permeability [N/A^2]
  double m_e;   ///< electron mass [kg]
  double m_p;   ///< proton mass [kg]
  double c;     ///< speed of light [m/s]
  double k_B;   ///< Boltzmann constant [J/K]
  double mu_B;  ///< Bohr magneton [J/T]
  double mu_N;  ///< nuclear magneton [J/T]
  double r_e;   ///< classical electron radius [m]
  double g_s;   ///< electron spin g-factor magnitude
};

inline constexpr PhysicalConstants codata2018{
    1.602176634e-19,    // e (exact)
    1.054571817e-34,    // hbar (exact, h/2pi)
    1.25663706212e-6,   // mu0
    9.1093837015e-31,   // m_e
    1.67262192369e-27,  // m_p
    299792458.0,        // c (exact)
    1.380649e-23,       // k_B (exact)
    9.2740100783e-24,   // mu_B
    5.0507837461e-27,   // mu_N
    2.8179403262e-15,   // r_e
    2.00231930436256,   // g_s
};

inline constexpr double pi = 3.14159265358979323846;

// Moments and gyromagnetic ratios are stored as magnitudes. The electron
// moment's negative sign is absorbed into the rotation conventions of the
// quantum module; every phase formula here uses |mu|.
struct SpinSpecies {
  std::string name;
  double gamma;  ///< gyromagnetic ratio magnitude [rad/s/T]
  double mu;     ///< magnetic moment magnitude, gamma*hbar*I [J/T]
  double spin;   ///< spin quantum number I
  double g;      ///< g-factor magnitude
};

/// Which gamma to build a species from: full CODATA precision, or the
/// rounded textbook figures (2pi*28 GHz/T, 2pi*42.6 MHz/T) used by the
/// golden tests.
enum class GammaSource { codata, nominal };

SpinSpecies electron_species(GammaSource src = GammaSource::codata);
SpinSpecies proton_species(GammaSource src = GammaSource::codata);

/// Free-spin species from an explicit gamma [rad/s/T], g-factor and spin
/// quantum number. Throws std::domain_error for non-positive gamma or spin.
SpinSpecies custom_species(double gamma, double g, double spin,
                           const std::string& name = "custom");

struct BeamKinematics {
  double kinetic_energy_ev;  ///< [eV]
  double v;                  ///< speed [m/s]
  double gamma_L;            ///< Lorentz factor
};

/// Relativistic kinematics for a beam electron of the given kinetic energy.
/// Throws std::domain_error for non-positive energies.
BeamKinematics beam_kinematics(double kinetic_energy_ev);

}  // namespace emsr
