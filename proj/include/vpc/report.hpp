#pragma once

#include <optional>
#include <string>

namespace vpc {

// One experiment line: a (mode, disjunction-size) pass over an instance.
struct ReportRow {
  std::string instance;
  std::string mode;
  std::string leaves;  // leaf count, or a tag like "best"/"combined"
  int num_gmics = 0;
  int num_vpcs = 0;
  int num_onesided = 0;
  std::optional<double> gap_gmic;
  std::optional<double> gap_vpc;
  std::optional<double> gap_max_gv;
  std::optional<double> gap_vpc_gmic;
  std::optional<double> db_gap;
  long fail_duplicate = 0;
  long fail_unbounded = 0;
  long fail_time = 0;
  long fail_dynamism = 0;
  long objectives_tried = 0;
  std::optional<double> pct_fail;
  std::optional<double> objs_per_cut;
  std::optional<double> active_gmic_pct;
  std::optional<double> active_vpc_pct;
  std::optional<double> active_onesided_pct;
  std::optional<double> lp_value;
  std::optional<double> ip_value;
  std::optional<double> db_value;
  std::string int_default_bounds;  // "0-inf" or "0-1"
  unsigned seed = 0;
  std::string note;
  // Timing block; kept in trailing columns so determinism checks can drop it.
  std::optional<double> gen_time_s;
  std::optional<double> sec_per_obj;
  std::optional<double> sec_per_cut;
};

}  // namespace vpc
