#pragma once

// Many-spin and finite-temperature extensions: the coherent product-state
// overlap factor D_S (its argument is the fringe phase, its modulus the
// visibility), precision bounds for the collective coupling, the thermal
// polarization fraction, point-column phases, and the classical magnetized
// sphere.

#include <complex>

#include "emsr/quantum.hpp"

namespace emsr {

struct SpinEnsemble {
  long n_spins;      ///< N_S >= 1
  SpinState single;  ///< identical product state of each spin
  SpinSpecies species;
};

SpinEnsemble spin_ensemble(long n_spins, const SpinState& single,
                           const SpinSpecies& species);

/// D_S = <e^{2 i theta sum_m sigma_x,m(t0)}> for the product state, via the
/// single-spin factorization (cos 2theta + i <sigma_x(t0)> sin 2theta)^N_S.
cplx ds_factor(const SpinEnsemble& ens, double theta, double t0,
               const BiasField& field);

/// Same quantity from the full 2^N_S state vector: the collective operator
/// is exponentiated by a scaled Taylor series acting on the tensor state,
/// with no per-spin factorization. Exact to numerical precision. Requires
/// n_spins <= 12 (capacity error otherwise) and a pure single-spin state.
cplx ds_bruteforce(const SpinEnsemble& ens, double theta, double t0,
                   const BiasField& field);

/// p+ of the ensemble interferometer, (1/2)[1 + Re(e^{-i phi} D_S)].
double ensemble_detection_probability(const SpinEnsemble& ens, double theta,
                                      double phi, double t0,
                                      const BiasField& field);

struct EnsembleCrb {
  double coherent;     ///< 1/(4 N_e N_S^2), x-aligned coherent state
  double unpolarized;  ///< closed form for <sigma_x(t0)> = 0
  double numeric;      ///< 1/(N_e F) with F from the D_S-based p+
  bool identifiable;   ///< false when the numeric information vanishes
};

/// Variance bounds on theta for N_e electrons probing the ensemble.
EnsembleCrb ensemble_crb(const SpinEnsemble& ens, long n_electrons,
                         double theta, double phi, double t0,
                         const BiasField& field);

/// High-temperature polarization fraction gamma*hbar*B0/(2 k_B T).
double thermal_polarization(const SpinSpecies& species, double B0,
                            double temperature);

/// Differential (toggled) phase 2*delta_phi = 4*theta*N_S*polarization of a
/// point column of N_S spins with explicit polarization.
double column_phase_polarized(long n_spins, const SpinSpecies& species,
                              double d, double polarization);

/// Same with the thermal polarization at (B0, T).
double column_phase(long n_spins, const SpinSpecies& species, double d,
                    double B0, double temperature);

/// Nuclear coupling theta_I = mu0*e*mu_N*g_I/(4*pi*hbar*d).
double nuclear_theta(double d, double g_I);

/// Uniformly magnetized paramagnetic sphere in the high-temperature regime.
struct MagnetizedSphere {
  double radius;        ///< [m]
  double n_spins;       ///< N_S
  double spin_density;  ///< N_S / (4/3 pi R^3) [1/m^3]
  SpinSpecies species;
  double B0;            ///< [T]
  double temperature;   ///< [K]
  double spin;          ///< I, from the species
};

MagnetizedSphere sphere_from_count(double radius, double n_spins,
                                   const SpinSpecies& species, double B0,
                                   double temperature);
MagnetizedSphere sphere_from_density(double radius, double spin_density,
                                     const SpinSpecies& species, double B0,
                                     double temperature);

/// Curie susceptibility chi = mu0 n_S gamma^2 hbar^2 I(I+1)/(3 k_B T).
double sphere_susceptibility(const MagnetizedSphere& sphere);

/// Single-orientation phase -(e/hbar) * pi R^2 * (2/3) chi B0. Negative by
/// the flux sign convention; |phase| is pi/2 times the matching point
/// column value.
double sphere_phase(const MagnetizedSphere& sphere);

}  // namespace emsr
