#include "emsr/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace emsr {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

/// Plain number or a pi expression: "pi", "2pi", "pi/2", "3pi/4", "-pi".
double parse_number(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw ConfigError("empty numeric value");
  const std::size_t pos = s.find("pi");
  if (pos != std::string::npos) {
    const std::string pre = trim(s.substr(0, pos));
    const std::string post = trim(s.substr(pos + 2));
    double coeff = 1.0;
    if (!pre.empty()) {
      if (pre == "-") {
        coeff = -1.0;
      } else {
        char* end = nullptr;
        coeff = std::strtod(pre.c_str(), &end);
        if (end != pre.c_str() + pre.size())
          throw ConfigError("malformed pi expression: '" + s + "'");
      }
    }
    double den = 1.0;
    if (!post.empty()) {
      if (post[0] != '/')
        throw ConfigError("malformed pi expression: '" + s + "'");
      const std::string d = trim(post.substr(1));
      char* end = nullptr;
      den = std::strtod(d.c_str(), &end);
      if (d.empty() || end != d.c_str() + d.size() || den == 0.0)
        throw ConfigError("malformed pi expression: '" + s + "'");
    }
    return coeff * pi / den;
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw ConfigError("malformed number: '" + s + "'");
  return v;
}

struct Unit {
  const char* name;
  double factor;
};

const Unit* unit_table(Dim dim, std::size_t& count) {
  static const Unit length[] = {{"m", 1.0},    {"mm", 1e-3}, {"um", 1e-6},
                                {"nm", 1e-9},  {"pm", 1e-12}};
  static const Unit energy[] = {{"eV", 1.0}, {"keV", 1e3}, {"MeV", 1e6}};
  static const Unit field[] = {{"T", 1.0}, {"mT", 1e-3}, {"uT", 1e-6}};
  static const Unit temperature[] = {{"K", 1.0}, {"mK", 1e-3}};
  static const Unit time_units[] = {{"s", 1.0},  {"ms", 1e-3}, {"us", 1e-6},
                                    {"ns", 1e-9}, {"ps", 1e-12}};
  static const Unit angle[] = {{"rad", 1.0},  {"mrad", 1e-3},
                               {"urad", 1e-6}, {"nrad", 1e-9}};
  switch (dim) {
    case Dim::length: count = std::size(length); return length;
    case Dim::energy: count = std::size(energy); return energy;
    case Dim::field: count = std::size(field); return field;
    case Dim::temperature: count = std::size(temperature); return temperature;
    case Dim::time: count = std::size(time_units); return time_units;
    case Dim::angle: count = std::size(angle); return angle;
    default: count = 0; return nullptr;
  }
}

}  // namespace

double parse_quantity(const std::string& text, Dim dim) {
  const std::string s = trim(text);
  if (s.empty()) throw ConfigError("empty value");
  if (dim == Dim::none) return parse_number(s);

  // Split a trailing unit token (letters) off the numeric part; "pi" inside
  // the numeric part is handled by parse_number, so only consider suffixes
  // that match a known unit.
  std::size_t count = 0;
  const Unit* units = unit_table(dim, count);
  std::size_t cut = s.size();
  while (cut > 0 && (std::isalpha(static_cast<unsigned char>(s[cut - 1]))))
    --cut;
  const std::string suffix = s.substr(cut);
  const std::string number_part = trim(s.substr(0, cut));

  const Unit* match = nullptr;
  for (std::size_t i = 0; i < count; ++i)
    if (suffix == units[i].name) match = &units[i];

  if (dim == Dim::angle) {
    // Angle values may be unitless (rad) or pi expressions.
    if (suffix.empty() || suffix == "pi" || number_part.empty() ||
        (!match && s.find("pi") != std::string::npos))
      return parse_number(s);
    if (!match) throw ConfigError("unknown angle unit: '" + suffix + "'");
    return parse_number(number_part) * match->factor;
  }

  if (!match) {
    throw ConfigError("missing or unknown unit on '" + s +
                      "' (unit suffix is mandatory on dimensional quantities)");
  }
  if (number_part.empty()) throw ConfigError("missing number in '" + s + "'");
  return parse_number(number_part) * match->factor;
}

std::vector<double> parse_grid(const std::string& text, Dim dim) {
  const std::string s = trim(text);
  if (s.rfind("linspace", 0) == 0) {
    const std::size_t open = s.find('(');
    const std::size_t close = s.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw ConfigError("malformed linspace: '" + s + "'");
    const auto args = split(s.substr(open + 1, close - open - 1), ',');
    if (args.size() != 3) throw ConfigError("linspace takes (start, stop, count)");
    const double a = parse_quantity(args[0], dim);
    const double b = parse_quantity(args[1], dim);
    const double nf = parse_number(trim(args[2]));
    const long n = long(nf);
    if (n < 1 || double(n) != nf)
      throw ConfigError("linspace count must be a positive integer");
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (long i = 0; i < n; ++i)
      out[std::size_t(i)] =
          n == 1 ? a : a + (b - a) * double(i) / double(n - 1);
    return out;
  }
  std::vector<double> out;
  for (const auto& item : split(s, ','))
    if (!trim(item).empty()) out.push_back(parse_quantity(item, dim));
  if (out.empty()) throw ConfigError("empty grid");
  return out;
}

namespace {

BiasAxis parse_axis(const std::string& s) {
  if (s == "x") return BiasAxis::x;
  if (s == "y") return BiasAxis::y;
  if (s == "z") return BiasAxis::z;
  throw ConfigError("unknown axis: '" + s + "'");
}

std::vector<PulseSpec> parse_pulses(const std::string& text) {
  std::vector<PulseSpec> out;
  const std::string s = trim(text);
  if (s.empty() || s == "none") return out;
  for (const auto& item : split(s, ',')) {
    const auto parts = split(trim(item), ':');
    if (parts.size() != 2)
      throw ConfigError("pulse must be axis:angle, got '" + item + "'");
    out.push_back({parse_axis(trim(parts[0])),
                   parse_quantity(parts[1], Dim::angle)});
  }
  return out;
}

long parse_integer(const std::string& s, const char* what) {
  const double v = parse_number(s);
  if (v != std::floor(v) || std::abs(v) > 9e18)
    throw ConfigError(std::string(what) + " must be an integer");
  return long(v);
}

void apply_key(ScenarioConfig& cfg, const std::string& key,
               const std::string& value) {
  if (key == "species") {
    std::string v = trim(value);
    if (v.rfind("custom(", 0) == 0 && v.back() == ')') {
      const auto args = split(v.substr(7, v.size() - 8), ',');
      if (args.size() != 3)
        throw ConfigError("custom species takes (gamma, g, I)");
      cfg.species = "custom";
      cfg.custom_gamma = parse_number(trim(args[0]));
      cfg.custom_g = parse_number(trim(args[1]));
      cfg.custom_spin = parse_number(trim(args[2]));
    } else if (v == "electron" || v == "proton" || v == "custom") {
      cfg.species = v;
    } else {
      throw ConfigError("unknown species: '" + v + "'");
    }
  } else if (key == "custom_gamma") {
    cfg.custom_gamma = parse_number(value);
  } else if (key == "custom_g") {
    cfg.custom_g = parse_number(value);
  } else if (key == "custom_spin") {
    cfg.custom_spin = parse_number(value);
  } else if (key == "gamma_convention") {
    const std::string v = trim(value);
    if (v == "codata") cfg.gamma_source = GammaSource::codata;
    else if (v == "nominal") cfg.gamma_source = GammaSource::nominal;
    else throw ConfigError("gamma_convention must be codata or nominal");
  } else if (key == "d") {
    cfg.d = parse_quantity(value, Dim::length);
  } else if (key == "B0") {
    cfg.B0 = parse_quantity(value, Dim::field);
  } else if (key == "bias_axis") {
    cfg.bias_axis = parse_axis(trim(value));
  } else if (key == "temperature") {
    const std::string v = trim(value);
    if (v == "pure") cfg.temperature.reset();
    else cfg.temperature = parse_quantity(v, Dim::temperature);
  } else if (key == "N_S") {
    cfg.n_spins = parse_integer(value, "N_S");
  } else if (key == "polarization") {
    cfg.polarization_override = parse_number(value);
  } else if (key == "pulses") {
    cfg.pulses = parse_pulses(value);
  } else if (key == "t0_phase_grid") {
    cfg.t0_phase_grid = parse_grid(value, Dim::angle);
  } else if (key == "phi_grid") {
    cfg.phi_grid = parse_grid(value, Dim::angle);
  } else if (key == "N_e") {
    cfg.n_electrons = parse_integer(value, "N_e");
  } else if (key == "seed") {
    cfg.seed = std::uint64_t(parse_integer(value, "seed"));
  } else if (key == "beam_energy") {
    cfg.beam_energy_ev = parse_quantity(value, Dim::energy);
  } else if (key == "lifetime") {
    cfg.lifetime = parse_quantity(value, Dim::time);
  } else if (key == "resonance_mode") {
    const std::string v = trim(value);
    if (v != "magnitude" && v != "coherent")
      throw ConfigError("resonance_mode must be magnitude or coherent");
    cfg.resonance_mode = v;
  } else if (key == "pulses_per_point") {
    cfg.pulses_per_point = int(parse_integer(value, "pulses_per_point"));
  } else if (key == "omega_e_rel_grid") {
    cfg.omega_e_rel_grid = parse_grid(value, Dim::none);
  } else {
    throw ConfigError("unknown config key: '" + key + "'");
  }
}

void validate(const ScenarioConfig& cfg) {
  if (!(cfg.d > 0.0)) throw ConfigError("d must be > 0");
  if (cfg.B0 < 0.0) throw ConfigError("B0 must be >= 0");
  if (cfg.temperature && !(*cfg.temperature > 0.0))
    throw ConfigError("temperature must be > 0 (or 'pure')");
  if (cfg.n_spins < 1) throw ConfigError("N_S must be >= 1");
  if (cfg.n_electrons < 0) throw ConfigError("N_e must be >= 0");
  if (cfg.polarization_override &&
      (*cfg.polarization_override < 0.0 || *cfg.polarization_override > 1.0))
    throw ConfigError("polarization must be in [0, 1]");
  if (cfg.t0_phase_grid.empty()) throw ConfigError("t0_phase_grid is empty");
  if (!(cfg.beam_energy_ev > 0.0)) throw ConfigError("beam_energy must be > 0");
  if (cfg.pulses_per_point < 1) throw ConfigError("pulses_per_point must be >= 1");
  if (cfg.lifetime < 0.0) throw ConfigError("lifetime must be >= 0");
  if (cfg.species == "custom" && !(cfg.custom_gamma > 0.0))
    throw ConfigError("custom species needs gamma > 0");
}

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_grid(const std::vector<double>& grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i) out += ", ";
    out += fmt_full(grid[i]);
  }
  return out;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      apply_key(cfg, key, value);
    } catch (const ConfigError& err) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + err.what());
    }
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  if (cfg.species == "custom") {
    out << "species = custom(" << fmt_full(cfg.custom_gamma) << ", "
        << fmt_full(cfg.custom_g) << ", " << fmt_full(cfg.custom_spin) << ")\n";
  } else {
    out << "species = " << cfg.species << "\n";
  }
  out << "gamma_convention = "
      << (cfg.gamma_source == GammaSource::codata ? "codata" : "nominal") << "\n";
  out << "d = " << fmt_full(cfg.d) << " m\n";
  out << "B0 = " << fmt_full(cfg.B0) << " T\n";
  out << "bias_axis = " << axis_name(cfg.bias_axis) << "\n";
  if (cfg.temperature)
    out << "temperature = " << fmt_full(*cfg.temperature) << " K\n";
  else
    out << "temperature = pure\n";
  out << "N_S = " << cfg.n_spins << "\n";
  if (cfg.polarization_override)
    out << "polarization = " << fmt_full(*cfg.polarization_override) << "\n";
  if (!cfg.pulses.empty()) {
    out << "pulses = ";
    for (std::size_t i = 0; i < cfg.pulses.size(); ++i) {
      if (i) out << ", ";
      out << axis_name(cfg.pulses[i].axis) << ":" << fmt_full(cfg.pulses[i].angle);
    }
    out << "\n";
  }
  out << "t0_phase_grid = " << join_grid(cfg.t0_phase_grid) << "\n";
  if (!cfg.phi_grid.empty()) out << "phi_grid = " << join_grid(cfg.phi_grid) << "\n";
  out << "N_e = " << cfg.n_electrons << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "beam_energy = " << fmt_full(cfg.beam_energy_ev) << " eV\n";
  if (cfg.lifetime > 0.0) out << "lifetime = " << fmt_full(cfg.lifetime) << " s\n";
  out << "resonance_mode = " << cfg.resonance_mode << "\n";
  out << "pulses_per_point = " << cfg.pulses_per_point << "\n";
  if (!cfg.omega_e_rel_grid.empty())
    out << "omega_e_rel_grid = " << join_grid(cfg.omega_e_rel_grid) << "\n";
  return out.str();
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
  const std::string text = serialize_config(cfg);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

SpinSpecies config_species(const ScenarioConfig& cfg) {
  if (cfg.species == "electron") return electron_species(cfg.gamma_source);
  if (cfg.species == "proton") return proton_species(cfg.gamma_source);
  return custom_species(cfg.custom_gamma, cfg.custom_g, cfg.custom_spin);
}

const char* axis_name(BiasAxis axis) {
  switch (axis) {
    case BiasAxis::x: return "x";
    case BiasAxis::y: return "y";
    default: return "z";
  }
}

}  // namespace emsr
