#pragma once

// Declarative scenario configuration: flat key-value text with mandatory
// unit suffixes on dimensional quantities, '#' comments, and linspace(...)
// grid shorthand. Probe times are specified as Larmor phases omega0*t0, so
// configs stay independent of the bias magnitude.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emsr/constants.hpp"
#include "emsr/errors.hpp"

namespace emsr {

enum class BiasAxis { x, y, z };

struct PulseSpec {
  BiasAxis axis;
  double angle;  ///< [rad]
};

struct ScenarioConfig {
  std::string species = "electron";  ///< electron | proton | custom
  double custom_gamma = 0.0;         ///< [rad/s/T], custom species only
  double custom_g = 0.0;
  double custom_spin = 0.5;
  GammaSource gamma_source = GammaSource::codata;

  double d = 1e-9;   ///< arm-to-sample distance [m]
  double B0 = 1.8;   ///< [T]
  BiasAxis bias_axis = BiasAxis::z;
  std::optional<double> temperature;  ///< [K]; empty = pure initial state
  long n_spins = 1;
  std::optional<double> polarization_override;  ///< fraction in [0, 1]

  std::vector<PulseSpec> pulses;
  std::vector<double> t0_phase_grid = {0.0};  ///< omega0*t0 values [rad]
  std::vector<double> phi_grid;               ///< [rad]
  long n_electrons = 0;  ///< shots per grid point; 0 = noiseless scan
  std::uint64_t seed = 0;
  double beam_energy_ev = 200e3;
  double lifetime = 0.0;  ///< [s]; 0 disables the duration gate

  std::string resonance_mode = "magnitude";  ///< magnitude | coherent
  int pulses_per_point = 64;
  std::vector<double> omega_e_rel_grid;  ///< omega_e grid in units of omega0
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);

/// Canonical serialization (SI values, fixed key order); parse of the output
/// reproduces the struct bit-for-bit.
std::string serialize_config(const ScenarioConfig& cfg);

/// FNV-1a over the canonical serialization.
std::uint64_t config_hash(const ScenarioConfig& cfg);

SpinSpecies config_species(const ScenarioConfig& cfg);

const char* axis_name(BiasAxis axis);

/// Quantity dimensions accepted by the value parser.
enum class Dim { length, energy, field, temperature, time, angle, none };

/// Parse "0.1 nm", "200 keV", "pi/2", "42"... Unit suffix is mandatory for
/// dimensional quantities; throws ConfigError otherwise.
double parse_quantity(const std::string& text, Dim dim);

/// Comma list of quantities or linspace(a, b, n).
std::vector<double> parse_grid(const std::string& text, Dim dim);

}  // namespace emsr
