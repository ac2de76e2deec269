#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "vpc/cut.hpp"
#include "vpc/report.hpp"

namespace vpc {

// RFC-4180 field quoting: wraps in quotes when the value contains a comma,
// a quote, or a line break; embedded quotes are doubled.
std::string csv_escape(const std::string& field);

// Sparse "index:value,...,beta:value,provenance:kind" form; exact decimals.
std::string serialize_cut(const Cut& cut);

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);

struct CutRecord {
  std::string instance;
  std::string mode;
  std::string leaves;
  Cut cut;
};
void write_cuts_csv(std::ostream& out, const std::vector<CutRecord>& cuts);

}  // namespace vpc
