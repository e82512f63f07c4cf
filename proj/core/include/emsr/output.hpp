#pragma once

// Deterministic CSV/JSON emission: fixed column order per result type,
// 12 significant digits, '.' decimal separator, '\n' line endings, so a
// given config + seed produces byte-identical files.

#include <ostream>
#include <string>
#include <vector>

#include "emsr/protocols.hpp"

namespace emsr {

/// 12 significant digits, locale-independent.
std::string format_sig(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table to_table(const ProtocolResult& result);
Table to_table(const ResonanceResult& result);
Table to_table(const BetaSweepResult& result);
Table to_table(const std::vector<PhaseTableRow>& rows);

void write_csv(std::ostream& out, const Table& table);

/// JSON mirror of the CSV rows plus metadata (config echo, hash, seed,
/// version). Cell values are kept as the CSV strings so the two formats
/// stay bit-consistent.
void write_json(std::ostream& out, const Table& table, const Metadata& meta);

}  // namespace emsr
