#include "emsr/output.hpp"

#include <cstdio>

#include "json.hpp"

namespace emsr {

std::string format_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Table to_table(const ProtocolResult& result) {
  Table t;
  t.header = {"stage",     "t0_phase",       "phi",
              "p_plus_model", "n_plus",      "n_minus",
              "delta_phi_fit", "visibility_fit", "crb"};
  for (const auto& stage : result.stages) {
    for (const auto& row : stage.rows) {
      t.rows.push_back({stage.stage, format_sig(row.t0_phase),
                        format_sig(row.phi), format_sig(row.p_plus_model),
                        std::to_string(row.n_plus), std::to_string(row.n_minus),
                        format_sig(row.delta_phi_fit),
                        format_sig(row.visibility_fit), format_sig(row.crb)});
    }
  }
  return t;
}

Table to_table(const ResonanceResult& result) {
  Table t;
  t.header = {"omega_e", "omega_e_over_omega0", "signal"};
  for (const auto& p : result.points)
    t.rows.push_back(
        {format_sig(p.omega_e), format_sig(p.omega_rel), format_sig(p.signal)});
  return t;
}

Table to_table(const BetaSweepResult& result) {
  Table t;
  t.header = {"beta_rad", "delta_phi_rad", "visibility"};
  for (const auto& p : result.points)
    t.rows.push_back(
        {format_sig(p.beta), format_sig(p.delta_phi), format_sig(p.visibility)});
  return t;
}

Table to_table(const std::vector<PhaseTableRow>& rows) {
  Table t;
  t.header = {"species", "d_m", "N_S", "polarization", "two_delta_phi_rad"};
  for (const auto& row : rows)
    t.rows.push_back({row.species, format_sig(row.d),
                      std::to_string(row.n_spins), format_sig(row.polarization),
                      format_sig(row.differential_phase)});
  return t;
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table, const Metadata& meta) {
  nlohmann::ordered_json doc;
  char hash_hex[19];
  std::snprintf(hash_hex, sizeof hash_hex, "0x%016llx",
                static_cast<unsigned long long>(meta.config_hash));
  doc["metadata"] = {{"version", meta.version},
                     {"seed", meta.seed},
                     {"config_hash", hash_hex},
                     {"config", meta.config_text}};
  doc["columns"] = table.header;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) rows.push_back(row);
  doc["rows"] = rows;
  out << doc.dump(2) << '\n';
}

}  // namespace emsr
