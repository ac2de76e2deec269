#include "vpc/csv.hpp"

#include <cstdio>

namespace vpc {

namespace {

// %.17g round-trips doubles exactly; force a decimal point so integers read
// back as floats ("-1" -> "-1.0").
std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string num_opt(const std::optional<double>& v) {
  if (!v) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", *v);
  return buf;
}

}  // namespace

const char* cut_kind_name(CutKind kind) {
  switch (kind) {
    case CutKind::Gmic: return "gmic";
    case CutKind::Vpc: return "vpc";
    case CutKind::OneSided: return "one_sided";
  }
  return "?";
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string serialize_cut(const Cut& cut) {
  std::string s;
  for (std::size_t j = 0; j < cut.coeffs.size(); ++j) {
    if (cut.coeffs[j] == 0.0) continue;
    s += std::to_string(j);
    s += ':';
    s += num17(cut.coeffs[j]);
    s += ',';
  }
  s += "beta:";
  s += num17(cut.beta);
  s += ",provenance:";
  s += cut_kind_name(cut.kind);
  return s;
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << "instance,mode,leaves,num_gmics,num_vpcs,num_onesided,"
         "gap_G,gap_V,gap_max_GV,gap_VG,DB_gap,"
         "fail_dup,fail_unbdd,fail_tilim,fail_dyn,objectives_tried,pct_fail,"
         "objs_per_cut,active_gmic_pct,active_vpc_pct,active_onesided_pct,"
         "lp_value,ip_value,db_value,int_default_bounds,seed,note,"
         "gen_time_s,sec_per_obj,sec_per_cut\n";
  for (const ReportRow& r : rows) {
    out << csv_escape(r.instance) << ',' << csv_escape(r.mode) << ','
        << csv_escape(r.leaves) << ',' << r.num_gmics << ',' << r.num_vpcs << ','
        << r.num_onesided << ',' << num_opt(r.gap_gmic) << ','
        << num_opt(r.gap_vpc) << ',' << num_opt(r.gap_max_gv) << ','
        << num_opt(r.gap_vpc_gmic) << ',' << num_opt(r.db_gap) << ','
        << r.fail_duplicate << ',' << r.fail_unbounded << ',' << r.fail_time
        << ',' << r.fail_dynamism << ',' << r.objectives_tried << ','
        << num_opt(r.pct_fail) << ',' << num_opt(r.objs_per_cut) << ','
        << num_opt(r.active_gmic_pct) << ',' << num_opt(r.active_vpc_pct) << ','
        << num_opt(r.active_onesided_pct) << ',' << num_opt(r.lp_value) << ','
        << num_opt(r.ip_value) << ',' << num_opt(r.db_value) << ','
        << csv_escape(r.int_default_bounds) << ',' << r.seed << ','
        << csv_escape(r.note) << ',' << num_opt(r.gen_time_s) << ','
        << num_opt(r.sec_per_obj) << ',' << num_opt(r.sec_per_cut) << '\n';
  }
}

void write_cuts_csv(std::ostream& out, const std::vector<CutRecord>& cuts) {
  out << "instance,mode,leaves,label,cut\n";
  for (const CutRecord& c : cuts) {
    out << csv_escape(c.instance) << ',' << csv_escape(c.mode) << ','
        << csv_escape(c.leaves) << ',' << csv_escape(c.cut.objective_label)
        << ',' << csv_escape(serialize_cut(c.cut)) << '\n';
  }
}

}  // namespace vpc
