// Command line front end: interferometric phase and deflection of a spin
// sample probed by a beam electron, fringe scans, pump-probe protocols,
// resonance scans, orientation sweeps, phase tables, Monte Carlo estimator
// studies, and wave-packet validity checks.
//
// Exit codes: 0 success, 2 config/usage error, 3 physical-domain error,
// 4 numerical-convergence error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "emsr/config.hpp"
#include "emsr/constants.hpp"
#include "emsr/ensemble.hpp"
#include "emsr/errors.hpp"
#include "emsr/estimation.hpp"
#include "emsr/magnetostatics.hpp"
#include "emsr/output.hpp"
#include "emsr/protocols.hpp"
#include "emsr/quantum.hpp"

namespace {

using namespace emsr;

struct GlobalOpts {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

struct Overrides {
  std::optional<std::string> species;
  std::optional<std::string> d;
  std::optional<std::string> b0;
  std::optional<std::string> temperature;
  std::optional<std::string> bias_axis;
  std::optional<long> n_spins;
  std::optional<long> n_electrons;
  std::optional<std::string> energy;
  bool nominal = false;
};

ScenarioConfig base_config(const GlobalOpts& global, const Overrides& ov) {
  ScenarioConfig cfg;
  if (!global.config_path.empty()) cfg = load_config_file(global.config_path);
  if (ov.species) {
    ScenarioConfig probe;  // reuse the config parser for custom(...) syntax
    cfg.species = "electron";
    probe = parse_config("species = " + *ov.species + "\n");
    cfg.species = probe.species;
    cfg.custom_gamma = probe.custom_gamma;
    cfg.custom_g = probe.custom_g;
    cfg.custom_spin = probe.custom_spin;
  }
  if (ov.nominal) cfg.gamma_source = GammaSource::nominal;
  if (ov.d) cfg.d = parse_quantity(*ov.d, Dim::length);
  if (ov.b0) cfg.B0 = parse_quantity(*ov.b0, Dim::field);
  if (ov.temperature) {
    if (*ov.temperature == "pure")
      cfg.temperature.reset();
    else
      cfg.temperature = parse_quantity(*ov.temperature, Dim::temperature);
  }
  if (ov.bias_axis) {
    if (*ov.bias_axis == "x") cfg.bias_axis = BiasAxis::x;
    else if (*ov.bias_axis == "y") cfg.bias_axis = BiasAxis::y;
    else if (*ov.bias_axis == "z") cfg.bias_axis = BiasAxis::z;
    else throw ConfigError("bias axis must be x, y or z");
  }
  if (ov.n_spins) cfg.n_spins = *ov.n_spins;
  if (ov.n_electrons) cfg.n_electrons = *ov.n_electrons;
  if (ov.energy) cfg.beam_energy_ev = parse_quantity(*ov.energy, Dim::energy);
  if (global.seed) cfg.seed = *global.seed;
  return cfg;
}

void emit(const GlobalOpts& global, const Table& table, const Metadata& meta) {
  if (global.out_path.empty()) return;
  std::ofstream out(global.out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + global.out_path);
  std::string fmt = global.format;
  if (global.out_path.size() > 5 &&
      global.out_path.substr(global.out_path.size() - 5) == ".json")
    fmt = "json";
  if (fmt == "json")
    write_json(out, table, meta);
  else
    write_csv(out, table);
}

void summary_line(const GlobalOpts& global, const std::string& line) {
  if (!global.quiet) std::cout << line << "\n";
}

std::string mrad(double rad) {
  return format_sig(rad * 1e3) + " mrad";
}

int cmd_phase(const GlobalOpts& global, const Overrides& ov, int max_evals) {
  ScenarioConfig cfg = base_config(global, ov);
  const SpinSpecies species = config_species(cfg);
  const InteractionStrength coupling = interaction_strength(cfg.d, species);
  const double delta_phi = ab_phase_analytic(cfg.d, species.mu);
  const BeamKinematics kin = beam_kinematics(cfg.beam_energy_ev);
  const BeamGeometry geometry{Vec2(0.0, cfg.d), kin, 0.0};
  const DipoleSource source(species.mu, Vec3::UnitX());

  QuadratureOptions qopts;
  if (max_evals > 0) qopts.max_evaluations = max_evals;
  const double quad = ab_phase_quadrature(geometry, source, qopts);
  const double alpha = deflection_analytic(cfg.d, delta_phi, kin);
  const Vec2 dp = deflection_quadrature(geometry, source, qopts);
  const double alpha_quad =
      dp.norm() / (codata2018.m_e * kin.gamma_L * kin.v);
  const ValidityReport rep =
      validity_limits(cfg.d, species, species.gamma * cfg.B0, kin, 1e-9, cfg.d / 16.0);

  summary_line(global, "species            " + species.name);
  summary_line(global, "d                  " + format_sig(cfg.d) + " m");
  summary_line(global, "theta              " + format_sig(coupling.theta) + " rad");
  summary_line(global, "delta_phi          " + format_sig(delta_phi) + " rad");
  summary_line(global, "2*delta_phi        " + format_sig(2.0 * delta_phi) +
                           " rad (" + mrad(2.0 * delta_phi) + ")");
  summary_line(global, "quadrature         " + format_sig(quad) + " rad");
  summary_line(global, "deflection         " + format_sig(alpha) + " rad (" +
                           format_sig(alpha * 1e9) + " nrad)");
  summary_line(global, "deflection_quad    " + format_sig(alpha_quad) + " rad");
  summary_line(global, "delta_y_max        " + format_sig(rep.delta_y_max) + " m");

  Table t;
  t.header = {"species", "d_m", "theta_rad", "delta_phi_rad",
              "delta_phi_quad_rad", "two_delta_phi_rad", "deflection_rad",
              "deflection_quad_rad", "delta_y_max_m"};
  t.rows.push_back({species.name, format_sig(cfg.d), format_sig(coupling.theta),
                    format_sig(delta_phi), format_sig(quad),
                    format_sig(2.0 * delta_phi), format_sig(alpha),
                    format_sig(alpha_quad), format_sig(rep.delta_y_max)});
  emit(global, t, make_metadata(cfg));
  return 0;
}

int cmd_scan(const GlobalOpts& global, const Overrides& ov, const char* which) {
  ScenarioConfig cfg = base_config(global, ov);
  if (global.config_path.empty() && !ov.bias_axis) {
    // Pick the protocol's canonical axis when nothing was specified.
    if (std::string(which) == "a") cfg.bias_axis = BiasAxis::x;
    if (std::string(which) == "b") cfg.bias_axis = BiasAxis::z;
  }
  ProtocolResult result;
  if (std::string(which) == "a") result = run_protocol_a(cfg);
  else if (std::string(which) == "b") result = run_protocol_b(cfg);
  else result = run_fringe(cfg);

  for (const auto& warning : result.warnings)
    std::cerr << "warning: " << warning << "\n";
  summary_line(global, "theta              " + format_sig(result.theta) + " rad");
  summary_line(global, "polarization       " + format_sig(result.polarization));
  for (const auto& stage : result.stages) {
    for (std::size_t i = 0; i < stage.t0_phases.size(); ++i) {
      summary_line(global, stage.stage + "  t0_phase " +
                               format_sig(stage.t0_phases[i]) + "  phase_fit " +
                               format_sig(stage.phase_fits[i]) +
                               "  visibility_fit " +
                               format_sig(stage.visibility_fits[i]));
    }
  }
  if (std::string(which) == "a")
    summary_line(global, "differential_phase " +
                             format_sig(result.differential_phase) + " rad (" +
                             mrad(result.differential_phase) + ")");
  emit(global, to_table(result), result.meta);
  return 0;
}

int cmd_resonance(const GlobalOpts& global, const Overrides& ov, int points,
                  double span, int train, const std::string& mode) {
  ScenarioConfig cfg = base_config(global, ov);
  if (global.config_path.empty() && !ov.bias_axis) cfg.bias_axis = BiasAxis::z;
  if (!mode.empty()) cfg.resonance_mode = mode;
  if (train > 0) cfg.pulses_per_point = train;
  if (points > 0) {
    cfg.omega_e_rel_grid.clear();
    for (int i = 0; i < points; ++i)
      cfg.omega_e_rel_grid.push_back(
          1.0 - span + 2.0 * span * (points == 1 ? 0.5 : double(i) / (points - 1)));
  }
  const ResonanceResult result = resonance_scan(cfg);
  summary_line(global, "omega0             " + format_sig(result.omega0) + " rad/s");
  summary_line(global, "argmax omega_e     " +
                           format_sig(result.points[result.argmax].omega_e) +
                           " rad/s (omega_e/omega0 = " +
                           format_sig(result.points[result.argmax].omega_rel) + ")");
  emit(global, to_table(result), result.meta);
  return 0;
}

int cmd_beta_sweep(const GlobalOpts& global, const Overrides& ov, int points) {
  ScenarioConfig cfg = base_config(global, ov);
  if (points < 1) throw ConfigError("--points must be >= 1");
  std::vector<double> grid(std::size_t(points), 0.0);
  for (int i = 0; i < points; ++i)
    grid[std::size_t(i)] = 2.0 * pi * double(i) / double(points);
  const BetaSweepResult result = beta_sweep(cfg, grid);
  summary_line(global, "theta              " + format_sig(result.theta) + " rad");
  summary_line(global, "beta points        " + std::to_string(points));
  emit(global, to_table(result), result.meta);
  return 0;
}

int cmd_table(const GlobalOpts& global, const Overrides& ov) {
  ScenarioConfig cfg = base_config(global, ov);
  const auto rows = reference_phase_table(cfg.gamma_source);
  for (const auto& row : rows) {
    std::ostringstream line;
    line << row.species << "  d=" << format_sig(row.d) << " m  N_S=" << row.n_spins
         << "  pol=" << format_sig(row.polarization) << "  2*delta_phi="
         << mrad(row.differential_phase);
    summary_line(global, line.str());
  }
  emit(global, to_table(rows), make_metadata(cfg));
  return 0;
}

int cmd_estimate(const GlobalOpts& global, const Overrides& ov, double theta,
                 double phi, double sx, int trials) {
  ScenarioConfig cfg = base_config(global, ov);
  const long n_electrons = ov.n_electrons.value_or(100000);
  if (n_electrons < 1) throw ConfigError("--Ne must be >= 1");
  if (trials < 2) throw ConfigError("--trials must be >= 2");
  const MleStudy study{theta, phi, sx, n_electrons, trials, cfg.seed};
  const EstimatorResult result = run_mle_study(study);
  const double ratio = result.crb > 0 ? result.variance / result.crb : 0.0;
  summary_line(global, "theta_true         " + format_sig(theta) + " rad");
  summary_line(global, "theta_hat_mean     " + format_sig(result.theta_hat) + " rad");
  summary_line(global, "empirical_variance " + format_sig(result.variance) + " rad^2");
  summary_line(global, "crb                " + format_sig(result.crb) + " rad^2");
  summary_line(global, "variance/crb       " + format_sig(ratio));
  if (result.clamped)
    summary_line(global, "note: some trials clamped outside the achievable range");

  Table t;
  t.header = {"theta_true", "phi", "sx", "N_e", "trials",
              "theta_hat_mean", "empirical_variance", "crb", "variance_over_crb"};
  t.rows.push_back({format_sig(theta), format_sig(phi), format_sig(sx),
                    std::to_string(n_electrons), std::to_string(trials),
                    format_sig(result.theta_hat), format_sig(result.variance),
                    format_sig(result.crb), format_sig(ratio)});
  emit(global, t, make_metadata(cfg));
  return 0;
}

int cmd_check(const GlobalOpts& global, const Overrides& ov, double dz_m,
              double drperp_m) {
  ScenarioConfig cfg = base_config(global, ov);
  const SpinSpecies species = config_species(cfg);
  const BeamKinematics kin = beam_kinematics(cfg.beam_energy_ev);
  const double omega0 = species.gamma * cfg.B0;
  const ValidityReport rep =
      validity_limits(cfg.d, species, omega0, kin, dz_m, drperp_m);
  summary_line(global, "delta_y_max        " + format_sig(rep.delta_y_max) + " m");
  summary_line(global, "kick_ratio         " + format_sig(rep.kick_ratio) +
                           (rep.kick_ok ? "  (ok, << 1)" : "  (FAIL, not << 1)"));
  summary_line(global, "flip_ratio         " + format_sig(rep.flip_ratio) +
                           (rep.flip_ok ? "  (ok, >= 1)" : "  (FAIL, < 1)"));

  Table t;
  t.header = {"delta_y_max_m", "kick_ratio", "kick_ok", "flip_ratio", "flip_ok"};
  t.rows.push_back({format_sig(rep.delta_y_max), format_sig(rep.kick_ratio),
                    rep.kick_ok ? "1" : "0", format_sig(rep.flip_ratio),
                    rep.flip_ok ? "1" : "0"});
  emit(global, t, make_metadata(cfg));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interferometric electron-probe spin resonance simulator"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  GlobalOpts global;
  Overrides ov;
  app.add_option("--config", global.config_path, "scenario config file");
  app.add_option("--out", global.out_path, "output file (csv or json)");
  app.add_option("--format", global.format, "output format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "RNG seed");
  app.add_flag("--quiet", global.quiet, "suppress the summary printout");

  auto add_overrides = [&](CLI::App* sub) {
    sub->add_option("--species", ov.species,
                    "electron | proton | custom(gamma,g,I)");
    sub->add_option("--d", ov.d, "arm-to-sample distance, e.g. 0.1nm");
    sub->add_option("--B0", ov.b0, "bias field, e.g. 1.8T");
    sub->add_option("--temperature", ov.temperature, "e.g. 10K, or pure");
    sub->add_option("--bias-axis", ov.bias_axis, "x | y | z");
    sub->add_option("--NS", ov.n_spins, "number of spins in the column");
    sub->add_option("--Ne", ov.n_electrons, "electrons per grid point");
    sub->add_option("--energy", ov.energy, "beam kinetic energy, e.g. 200keV");
    sub->add_flag("--nominal", ov.nominal,
                  "use rounded textbook gyromagnetic ratios");
  };

  auto* phase = app.add_subcommand("phase", "analytic + quadrature phase and deflection");
  int max_evals = 0;
  add_overrides(phase);
  phase->add_option("--max-evals", max_evals, "quadrature evaluation budget");

  auto* fringe = app.add_subcommand("fringe", "fringe scan of the configured state");
  add_overrides(fringe);
  auto* prot_a = app.add_subcommand("protocol-a", "pi-pulse toggling, bias along x");
  add_overrides(prot_a);
  auto* prot_b = app.add_subcommand("protocol-b", "pi/2-pulse precession, bias along z");
  add_overrides(prot_b);

  auto* resonance = app.add_subcommand("resonance", "pulse-train resonance scan");
  int res_points = 0, res_train = 0;
  double res_span = 0.1;
  std::string res_mode;
  add_overrides(resonance);
  resonance->add_option("--points", res_points, "omega_e grid size");
  resonance->add_option("--span", res_span, "relative half width of the grid");
  resonance->add_option("--pulses", res_train, "pulse-train length per point");
  resonance->add_option("--mode", res_mode, "magnitude | coherent")
      ->check(CLI::IsMember({"magnitude", "coherent"}));

  auto* beta = app.add_subcommand("beta-sweep", "orientation sweep of a pure spin");
  int beta_points = 360;
  add_overrides(beta);
  beta->add_option("--points", beta_points, "number of beta samples in [0, 2pi)");

  auto* table = app.add_subcommand("table", "reference phase-shift table");
  add_overrides(table);

  auto* estimate = app.add_subcommand("estimate", "Monte Carlo CRB study");
  double est_theta = 0.3, est_phi = 0.0, est_sx = 1.0;
  int est_trials = 1000;
  add_overrides(estimate);  // --Ne sets the electrons per trial here
  estimate->add_option("--theta", est_theta, "true coupling [rad]");
  estimate->add_option("--phi", est_phi, "interferometer phase [rad]");
  estimate->add_option("--sx", est_sx, "<sigma_x(t0)> of the sample");
  estimate->add_option("--trials", est_trials, "number of trials");

  auto* check = app.add_subcommand("check", "wave-packet validity report");
  std::string check_dz = "1nm", check_drperp = "0.05nm";
  add_overrides(check);
  check->add_option("--dz", check_dz, "longitudinal wave-packet width");
  check->add_option("--drperp", check_drperp, "transverse wave-packet width");

  try {
    app.parse(argc, argv);
    if (seed_opt->count() > 0) global.seed = seed_value;

    if (phase->parsed()) return cmd_phase(global, ov, max_evals);
    if (fringe->parsed()) return cmd_scan(global, ov, "fringe");
    if (prot_a->parsed()) return cmd_scan(global, ov, "a");
    if (prot_b->parsed()) return cmd_scan(global, ov, "b");
    if (resonance->parsed())
      return cmd_resonance(global, ov, res_points, res_span, res_train, res_mode);
    if (beta->parsed()) return cmd_beta_sweep(global, ov, beta_points);
    if (table->parsed()) return cmd_table(global, ov);
    if (estimate->parsed())
      return cmd_estimate(global, ov, est_theta, est_phi, est_sx, est_trials);
    if (check->parsed())
      return cmd_check(global, ov, parse_quantity(check_dz, Dim::length),
                       parse_quantity(check_drperp, Dim::length));
    std::cerr << "error: config: no subcommand\n";
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  } catch (const emsr::ConfigError& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  } catch (const emsr::ConvergenceError& e) {
    std::cerr << "error: convergence: " << e.what()
              << " (estimate " << e.estimate() << ")\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "error: domain: " << e.what() << "\n";
    return 3;
  } catch (const std::length_error& e) {
    std::cerr << "error: domain: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
}
