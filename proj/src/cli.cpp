#include "vpc/cli.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vpc/csv.hpp"
#include "vpc/disjunction.hpp"
#include "vpc/eval.hpp"
#include "vpc/mps.hpp"

namespace vpc {

namespace {

bool parse_double(const std::string& text, double* out) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || errno == ERANGE) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  if (*end != '\0') return false;
  *out = v;
  return true;
}

// --ip-value takes either a literal float or the path of a sidecar file
// holding one float plus optional '#' comment lines.
double resolve_ip_value(const std::string& source) {
  double v = 0.0;
  if (parse_double(source, &v)) return v;
  std::ifstream in(source);
  if (!in)
    throw std::invalid_argument("--ip-value: cannot open file " + source);
  std::optional<double> got;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos || line[i] == '#') continue;
    if (got)
      throw std::invalid_argument("--ip-value: " + source +
                                  " holds more than one value");
    if (!parse_double(line.substr(i), &v))
      throw std::invalid_argument("--ip-value: " + source + " line " +
                                  std::to_string(lineno) +
                                  " is not a number");
    got = v;
  }
  if (!got)
    throw std::invalid_argument("--ip-value: " + source + " holds no value");
  return *got;
}

std::string instance_stem(const std::string& path) {
  std::size_t slash = path.find_last_of("/\\");
  std::string base =
      slash == std::string::npos ? path : path.substr(slash + 1);
  if (base.size() > 4 && base.substr(base.size() - 4) == ".mps")
    base.resize(base.size() - 4);
  return base.empty() ? "instance" : base;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"V-polyhedral disjunctive cut experiments"};

  std::string instance_path;
  std::string ip_source;
  std::string mode = "both";
  std::vector<int> leaves = {2, 4, 8, 16, 32, 64};
  double cut_limit_factor = 1.0;
  int gen_time_limit_s = 900;
  int prlp_obj_limit_s = 5;
  int prlp_feas_limit_s = 60;
  std::string out_path;
  std::string cuts_path;
  unsigned seed = 628;
  bool int_unit_bounds = false;
  bool verbose = false;

  app.add_option("--instance", instance_path, "MPS instance to process")
      ->required();
  app.add_option("--ip-value", ip_source,
                 "integer optimum, a float or a sidecar file with one");
  app.add_option("--mode", mode, "experiment family")
      ->check(CLI::IsMember(
          {"gmic", "vpc", "both", "splits", "crosses", "rounds"}));
  app.add_option("--leaves", leaves, "leaf counts for the tree modes")
      ->delimiter(',');
  app.add_option("--cut-limit-factor", cut_limit_factor,
                 "cuts allowed per disjunction, as a multiple of the leaves");
  app.add_option("--gen-time-limit-s", gen_time_limit_s,
                 "generation budget per disjunction size");
  app.add_option("--prlp-obj-limit-s", prlp_obj_limit_s,
                 "time limit per separation objective");
  app.add_option("--prlp-feas-limit-s", prlp_feas_limit_s,
                 "time limit for the initial feasibility solve");
  app.add_option("--out", out_path, "report CSV path (default stdout)");
  app.add_option("--cuts-out", cuts_path, "cut pool CSV path");
  app.add_option("--seed", seed, "seed recorded in the report");
  app.add_flag("--int-unit-bounds", int_unit_bounds,
               "integer columns without explicit bounds get [0,1]");
  app.add_flag("--verbose", verbose, "log pipeline notes to stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    MpsOptions mps_opt;
    mps_opt.integer_default_unit_bounds = int_unit_bounds;
    LinearProgram lp = parse_mps_file(instance_path, mps_opt);

    EvalConfig cfg;
    cfg.instance_name = instance_stem(instance_path);
    cfg.mode = mode;
    cfg.leaves = leaves;
    cfg.cut_limit_factor = cut_limit_factor;
    cfg.gen_time_limit_s = gen_time_limit_s;
    cfg.prlp_obj_limit_s = prlp_obj_limit_s;
    cfg.prlp_feas_limit_s = prlp_feas_limit_s;
    if (!ip_source.empty()) cfg.ip_value = resolve_ip_value(ip_source);
    cfg.seed = seed;
    cfg.int_default_unit_bounds = int_unit_bounds;
    cfg.verbose = verbose;

    EvalResult res = run_instance(lp, cfg);
    if (verbose)
      for (const std::string& s : res.log) std::cerr << s << "\n";

    if (out_path.empty()) {
      write_report_csv(std::cout, res.rows);
    } else {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 2;
      }
      write_report_csv(out, res.rows);
    }
    if (!cuts_path.empty()) {
      std::ofstream cuts(cuts_path);
      if (!cuts) {
        std::cerr << "error: cannot write " << cuts_path << "\n";
        return 2;
      }
      write_cuts_csv(cuts, res.cut_records);
    }
    return res.numerical_failure ? 3 : 0;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace vpc
