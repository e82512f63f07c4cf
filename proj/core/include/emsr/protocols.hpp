#pragma once

// Scenario layer: the two pump-probe protocols (constant-phase toggling
// with the bias along the interferometer normal, and precession probing
// with the bias along the beam axis), the resonance scan over pulse-train
// frequencies, the orientation sweep, and phase tables.

#include <cstdint>
#include <string>
#include <vector>

#include "emsr/config.hpp"
#include "emsr/ensemble.hpp"
#include "emsr/estimation.hpp"

namespace emsr {

inline constexpr const char* version_string = "emsr 1.0.0";

struct Metadata {
  std::string config_text;  ///< canonical echo
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string version = version_string;
};

struct RunRow {
  double t0_phase;      ///< omega0*t0 [rad]
  double phi;           ///< [rad]
  double p_plus_model;  ///< closed-form p+ for this row
  long n_plus;          ///< sampled counts (0 when noiseless)
  long n_minus;
  double delta_phi_fit;   ///< fringe fit of this row's t0 block
  double visibility_fit;
  double crb;  ///< variance bound at this row's parameters
};

/// One fringe scan: |t0_grid| x |phi_grid| rows plus per-t0 fits.
struct ScanResult {
  std::string stage;
  std::vector<RunRow> rows;
  std::vector<double> t0_phases;
  std::vector<double> phase_fits;
  std::vector<double> visibility_fits;
};

struct ProtocolResult {
  std::vector<ScanResult> stages;
  double theta = 0.0;             ///< single-passage coupling
  double polarization = 0.0;      ///< |<s . axis>| of the initial state
  double differential_phase = 0.0;  ///< pre - post fitted phase (protocol a)
  std::vector<std::string> warnings;
  Metadata meta;
};

/// Plain fringe scan of the configured initial state (no pulses applied).
ProtocolResult run_fringe(const ScenarioConfig& cfg);

/// Bias along x: scan, apply the configured pulses (default one pi pulse
/// about z), scan again, report the differential phase. Throws ConfigError
/// unless bias_axis = x.
ProtocolResult run_protocol_a(const ScenarioConfig& cfg);

/// Bias along z: scan the aligned state (zero phase, visibility reduced by
/// |cos 2theta|^N_S), apply the configured pulses (default one pi/2 pulse
/// about x), then scan the precessing spin over the t0 grid. Throws
/// ConfigError unless bias_axis = z.
ProtocolResult run_protocol_b(const ScenarioConfig& cfg);

struct ResonancePoint {
  double omega_e;    ///< [rad/s]
  double omega_rel;  ///< omega_e / omega0
  double signal;     ///< integrated fringe-phase signal [rad]
};

struct ResonanceResult {
  std::vector<ResonancePoint> points;
  double omega0 = 0.0;
  std::size_t argmax = 0;
  Metadata meta;
};

/// Protocol-b pulse-train scan over electron-arrival frequencies omega_e;
/// the train is phase-locked so that on resonance every arrival samples the
/// precession extremum. The integrated signal peaks at omega_e = omega0.
ResonanceResult resonance_scan(const ScenarioConfig& cfg);
ResonanceResult resonance_scan(const ScenarioConfig& cfg,
                               const std::vector<double>& omega_e_grid);

struct BetaPoint {
  double beta;        ///< [rad] angle of the spin from the normal axis e_x
  double delta_phi;   ///< [rad]
  double visibility;
};

struct BetaSweepResult {
  std::vector<BetaPoint> points;
  double theta = 0.0;
  Metadata meta;
};

/// Pure single spin oriented at angle beta from the interferometer normal:
/// delta_phi = atan(cos(beta) tan(2 theta)), V = sqrt(1 - sin^2(beta) sin^2(2 theta)).
BetaSweepResult beta_sweep(const ScenarioConfig& cfg,
                           const std::vector<double>& beta_grid);

struct PhaseTableRow {
  std::string species;  ///< electron | proton
  double d;             ///< [m]
  long n_spins;
  double polarization;        ///< fraction in [0, 1]
  double differential_phase;  ///< 2*delta_phi = 4*theta*N_S*polarization [rad]
};

/// Fills differential_phase for each requested row.
std::vector<PhaseTableRow> phase_table(std::vector<PhaseTableRow> rows,
                                       GammaSource src = GammaSource::codata);

/// The four reference scenario classes at d = 0.1 nm and 1 nm: single
/// electron spin, single hydrogen nuclear spin, thermally polarized
/// (1.8 T, 10 K) electron column of 1000, 10% hyperpolarized nuclear column
/// of 1000.
std::vector<PhaseTableRow> reference_phase_table(GammaSource src = GammaSource::codata);

Metadata make_metadata(const ScenarioConfig& cfg);

}  // namespace emsr
