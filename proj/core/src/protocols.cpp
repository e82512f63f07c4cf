#include "emsr/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace emsr {

namespace {

Vec3 axis_vector(BiasAxis axis) {
  switch (axis) {
    case BiasAxis::x: return Vec3::UnitX();
    case BiasAxis::y: return Vec3::UnitY();
    default: return Vec3::UnitZ();
  }
}

struct Environment {
  SpinSpecies species;
  BiasField field;
  double theta;
  SpinState initial;
  double polarization;
};

Environment make_environment(const ScenarioConfig& cfg) {
  const SpinSpecies species = config_species(cfg);
  if (species.spin != 0.5)
    throw ConfigError("protocols require a spin-1/2 species");
  const BiasField field = bias_field(species, cfg.B0, axis_vector(cfg.bias_axis));
  const double theta = interaction_strength(cfg.d, species).theta;

  double pol = 1.0;
  if (cfg.polarization_override) {
    pol = *cfg.polarization_override;
  } else if (cfg.temperature) {
    if (!(field.omega0 > 0.0))
      throw ConfigError("thermal initial state needs B0 > 0");
    pol = 1.0 - 2.0 * thermal_occupation(field, *cfg.temperature);
  }
  const SpinState initial = SpinState::from_bloch(pol * field.axis);
  return Environment{species, field, theta, initial, pol};
}

std::vector<double> default_phi_grid() {
  std::vector<double> grid(12);
  for (int i = 0; i < 12; ++i) grid[std::size_t(i)] = 2.0 * pi * i / 12.0;
  return grid;
}

// Wrap-safe difference of two fitted phases.
double phase_difference(double a, double b) {
  double d = a - b;
  while (d > pi) d -= 2.0 * pi;
  while (d < -pi) d += 2.0 * pi;
  return d;
}

ScanResult scan_stage(const Environment& env, const ScenarioConfig& cfg,
                      const SpinState& state, const std::string& stage,
                      std::uint64_t& stream_counter) {
  const std::vector<double> phi_grid =
      cfg.phi_grid.empty() ? default_phi_grid() : cfg.phi_grid;
  const SpinEnsemble ens = spin_ensemble(cfg.n_spins, state, env.species);
  const CounterRng master(cfg.seed);

  ScanResult out;
  out.stage = stage;
  out.rows.reserve(cfg.t0_phase_grid.size() * phi_grid.size());
  for (double t0_phase : cfg.t0_phase_grid) {
    const double t0 =
        env.field.omega0 > 0.0 ? t0_phase / env.field.omega0 : 0.0;

    std::vector<FringeScanPoint> block;
    block.reserve(phi_grid.size());
    std::vector<RunRow> block_rows;
    block_rows.reserve(phi_grid.size());
    for (double phi : phi_grid) {
      const double p =
          ensemble_detection_probability(ens, env.theta, phi, t0, env.field);
      RunRow row{};
      row.t0_phase = t0_phase;
      row.phi = phi;
      row.p_plus_model = p;
      if (cfg.n_electrons > 0) {
        const CounterRng rng = master.stream(stream_counter);
        row.n_plus = sample_counts(p, cfg.n_electrons, rng);
        row.n_minus = cfg.n_electrons - row.n_plus;
        block.push_back({phi, double(row.n_plus) / double(cfg.n_electrons)});
      } else {
        block.push_back({phi, p});
      }
      ++stream_counter;
      const long ne_bound = std::max<long>(cfg.n_electrons, 1);
      row.crb =
          ensemble_crb(ens, ne_bound, env.theta, phi, t0, env.field).numeric;
      block_rows.push_back(row);
    }

    const FringeFit fit = fit_fringe(block);
    for (auto& row : block_rows) {
      row.delta_phi_fit = fit.delta_phi;
      row.visibility_fit = fit.visibility;
      out.rows.push_back(row);
    }
    out.t0_phases.push_back(t0_phase);
    out.phase_fits.push_back(fit.delta_phi);
    out.visibility_fits.push_back(fit.visibility);
  }
  return out;
}

SpinState apply_pulses(const SpinState& state, const std::vector<PulseSpec>& pulses) {
  SpinState out = state;
  for (const auto& pulse : pulses)
    out = mw_pulse(out, axis_vector(pulse.axis), pulse.angle);
  return out;
}

void lifetime_gate(const Environment& env, const ScenarioConfig& cfg,
                   std::vector<std::string>& warnings) {
  if (cfg.lifetime <= 0.0 || !(env.field.omega0 > 0.0)) return;
  double max_phase = 0.0;
  for (double p : cfg.t0_phase_grid) max_phase = std::max(max_phase, std::abs(p));
  const double duration = max_phase / env.field.omega0;
  if (duration > cfg.lifetime)
    warnings.push_back("protocol duration " + std::to_string(duration) +
                       " s exceeds the configured lifetime " +
                       std::to_string(cfg.lifetime) + " s");
}

double mean(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  return v.empty() ? 0.0 : m / double(v.size());
}

}  // namespace

Metadata make_metadata(const ScenarioConfig& cfg) {
  Metadata meta;
  meta.config_text = serialize_config(cfg);
  meta.config_hash = config_hash(cfg);
  meta.seed = cfg.seed;
  return meta;
}

ProtocolResult run_fringe(const ScenarioConfig& cfg) {
  const Environment env = make_environment(cfg);
  ProtocolResult out;
  out.theta = env.theta;
  out.polarization = env.polarization;
  std::uint64_t counter = 0;
  out.stages.push_back(scan_stage(env, cfg, env.initial, "scan", counter));
  lifetime_gate(env, cfg, out.warnings);
  out.meta = make_metadata(cfg);
  return out;
}

ProtocolResult run_protocol_a(const ScenarioConfig& cfg) {
  if (cfg.bias_axis != BiasAxis::x)
    throw ConfigError("protocol a requires bias_axis = x (interferometer normal)");
  const Environment env = make_environment(cfg);
  const std::vector<PulseSpec> pulses =
      cfg.pulses.empty() ? std::vector<PulseSpec>{{BiasAxis::z, pi}} : cfg.pulses;

  ProtocolResult out;
  out.theta = env.theta;
  out.polarization = env.polarization;
  std::uint64_t counter = 0;
  out.stages.push_back(scan_stage(env, cfg, env.initial, "pre", counter));
  const SpinState toggled = apply_pulses(env.initial, pulses);
  out.stages.push_back(scan_stage(env, cfg, toggled, "post", counter));
  out.differential_phase =
      phase_difference(mean(out.stages[0].phase_fits), mean(out.stages[1].phase_fits));
  lifetime_gate(env, cfg, out.warnings);
  out.meta = make_metadata(cfg);
  return out;
}

ProtocolResult run_protocol_b(const ScenarioConfig& cfg) {
  if (cfg.bias_axis != BiasAxis::z)
    throw ConfigError("protocol b requires bias_axis = z (beam axis)");
  const Environment env = make_environment(cfg);
  const std::vector<PulseSpec> pulses =
      cfg.pulses.empty() ? std::vector<PulseSpec>{{BiasAxis::x, 0.5 * pi}}
                         : cfg.pulses;

  ProtocolResult out;
  out.theta = env.theta;
  out.polarization = env.polarization;
  std::uint64_t counter = 0;
  out.stages.push_back(scan_stage(env, cfg, env.initial, "pre", counter));
  const SpinState tipped = apply_pulses(env.initial, pulses);
  out.stages.push_back(scan_stage(env, cfg, tipped, "post", counter));
  // Pre and post fitted phases at matching t0 are reported; protocol b has
  // no single differential number, the post-stage phase oscillates with t0.
  out.differential_phase = 0.0;
  lifetime_gate(env, cfg, out.warnings);
  out.meta = make_metadata(cfg);
  return out;
}

ResonanceResult resonance_scan(const ScenarioConfig& cfg) {
  std::vector<double> rel = cfg.omega_e_rel_grid;
  if (rel.empty()) {
    rel.resize(21);
    for (int i = 0; i < 21; ++i)
      rel[std::size_t(i)] = 0.9 + 0.2 * double(i) / 20.0;
  }
  const Environment env = make_environment(cfg);
  std::vector<double> abs_grid(rel.size());
  for (std::size_t i = 0; i < rel.size(); ++i)
    abs_grid[i] = rel[i] * env.field.omega0;
  return resonance_scan(cfg, abs_grid);
}

ResonanceResult resonance_scan(const ScenarioConfig& cfg,
                               const std::vector<double>& omega_e_grid) {
  if (cfg.bias_axis != BiasAxis::z)
    throw ConfigError("resonance scan runs protocol b and requires bias_axis = z");
  if (omega_e_grid.empty()) throw ConfigError("empty omega_e grid");
  const Environment env = make_environment(cfg);
  if (!(env.field.omega0 > 0.0))
    throw ConfigError("resonance scan needs B0 > 0");
  const std::vector<PulseSpec> pulses =
      cfg.pulses.empty() ? std::vector<PulseSpec>{{BiasAxis::x, 0.5 * pi}}
                         : cfg.pulses;
  const SpinState tipped = apply_pulses(env.initial, pulses);
  const SpinEnsemble ens = spin_ensemble(cfg.n_spins, tipped, env.species);
  const bool coherent = cfg.resonance_mode == "coherent";
  const std::vector<double> phi_grid =
      cfg.phi_grid.empty() ? default_phi_grid() : cfg.phi_grid;
  const CounterRng master(cfg.seed);
  std::uint64_t stream_counter = 0;

  ResonanceResult out;
  out.omega0 = env.field.omega0;
  out.points.reserve(omega_e_grid.size());
  for (double omega_e : omega_e_grid) {
    if (!(omega_e > 0.0)) throw std::domain_error("omega_e must be > 0");
    // Arrival k of the phase-locked train samples the precession at
    // omega0 * t_k with t_k = (pi/2 + 2 pi k)/omega_e: on resonance every
    // arrival sits at the precession extremum. With N_e > 0 each arrival's
    // phase comes from a sampled fringe fit, otherwise from the model.
    double acc = 0.0;
    const int train = cfg.pulses_per_point;
    for (int k = 0; k < train; ++k) {
      const double t_k = (0.5 * pi + 2.0 * pi * k) / omega_e;
      double phase;
      if (cfg.n_electrons > 0) {
        std::vector<FringeScanPoint> scan;
        scan.reserve(phi_grid.size());
        for (double phi : phi_grid) {
          const double p =
              ensemble_detection_probability(ens, env.theta, phi, t_k, env.field);
          const CounterRng rng = master.stream(stream_counter++);
          const long n_plus = sample_counts(p, cfg.n_electrons, rng);
          scan.push_back({phi, double(n_plus) / double(cfg.n_electrons)});
        }
        phase = fit_fringe(scan).delta_phi;
      } else {
        phase = std::arg(ds_factor(ens, env.theta, t_k, env.field));
      }
      acc += coherent ? phase : std::abs(phase);
    }
    const double signal = std::abs(acc) / double(train);
    out.points.push_back({omega_e, omega_e / env.field.omega0, signal});
  }
  out.argmax = 0;
  for (std::size_t i = 1; i < out.points.size(); ++i)
    if (out.points[i].signal > out.points[out.argmax].signal) out.argmax = i;
  out.meta = make_metadata(cfg);
  return out;
}

BetaSweepResult beta_sweep(const ScenarioConfig& cfg,
                           const std::vector<double>& beta_grid) {
  if (cfg.n_spins != 1)
    throw ConfigError("beta sweep describes a pure single spin (N_S = 1)");
  if (beta_grid.empty()) throw ConfigError("empty beta grid");
  const SpinSpecies species = config_species(cfg);
  const double theta = interaction_strength(cfg.d, species).theta;

  BetaSweepResult out;
  out.theta = theta;
  out.points.reserve(beta_grid.size());
  for (double beta : beta_grid) {
    const FringeObservables fo = fringe_from_sx(std::cos(beta), theta);
    out.points.push_back({beta, fo.delta_phi, fo.visibility});
  }
  out.meta = make_metadata(cfg);
  return out;
}

std::vector<PhaseTableRow> phase_table(std::vector<PhaseTableRow> rows,
                                       GammaSource src) {
  for (auto& row : rows) {
    if (row.species != "proton" && row.species != "electron")
      throw ConfigError("phase table species must be electron or proton");
    const SpinSpecies species =
        row.species == "proton" ? proton_species(src) : electron_species(src);
    row.differential_phase =
        column_phase_polarized(row.n_spins, species, row.d, row.polarization);
  }
  return rows;
}

std::vector<PhaseTableRow> reference_phase_table(GammaSource src) {
  const double pol_e = thermal_polarization(electron_species(src), 1.8, 10.0);
  std::vector<PhaseTableRow> rows;
  for (double d : {0.1e-9, 1e-9}) {
    rows.push_back({"electron", d, 1, 1.0, 0.0});
    rows.push_back({"proton", d, 1, 1.0, 0.0});
    rows.push_back({"electron", d, 1000, pol_e, 0.0});
    rows.push_back({"proton", d, 1000, 0.10, 0.0});
  }
  return phase_table(std::move(rows), src);
}

}  // namespace emsr
