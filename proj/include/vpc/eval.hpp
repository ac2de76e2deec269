#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vpc/csv.hpp"
#include "vpc/cut.hpp"
#include "vpc/disjunction.hpp"
#include "vpc/frame.hpp"
#include "vpc/lp.hpp"
#include "vpc/pointray.hpp"
#include "vpc/report.hpp"

namespace vpc {

// Percent of the LP-to-IP gap closed by the post-cut bound. Empty when the
// instance leaves nothing to close (ip <= lp + 1e-9).
std::optional<double> gap_closed(double lp_value, double ip_value,
                                 double post_cut_value);

// Integer optimum by exhaustive enumeration. Empty when the instance has no
// integer-feasible point or is unbounded below over them. Throws
// EnumerationLimit past max_assignments.
std::optional<double> ip_by_enumeration(const LinearProgram& lp,
                                        long long max_assignments = 1000000);

// Copy of the instance with each cut appended as a >= row named after its
// objective label.
LinearProgram with_cut_rows(const LinearProgram& lp,
                            const std::vector<Cut>& cuts);

// A cut is active at x when |alpha.x - beta| <= tol*(1+|beta|). Percentages
// are empty for classes with no cuts.
struct ActiveCutStats {
  int gmic_total = 0;
  int gmic_active = 0;
  int vpc_total = 0;
  int vpc_active = 0;
  int onesided_total = 0;
  int onesided_active = 0;

  std::optional<double> gmic_pct() const;
  std::optional<double> vpc_pct() const;
  std::optional<double> onesided_pct() const;
};

ActiveCutStats active_cut_stats(const std::vector<Cut>& cuts,
                                const std::vector<double>& x,
                                double tol = 1e-6);

struct TooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Face classification of one cut against the disjunctive hull.
struct CutFaceDiagnostic {
  std::string objective_label;
  // Affinely independent hull vertices on the cut hyperplane.
  int tight_points = 0;
  bool facet = false;  // tight_points == n_cols
  // Tight separation ray rows none of whose owning terms put a point on the
  // cut; a cut with none of these has a standard tight-row basis.
  int stray_rays = 0;
  bool standard_basis = false;
};

struct FacetReport {
  std::vector<CutFaceDiagnostic> cuts;
  int hull_vertices = 0;
  // Affine rank of the hull vertex set; n_cols + 1 when full-dimensional.
  int hull_affine_rank = 0;
  // No cut with a standard basis failed the facet test.
  bool implication_holds = true;
};

// Enumerates the vertices of every term polyhedron exhaustively and labels
// each cut. Only sensible on tiny instances; throws TooLarge otherwise.
FacetReport facet_diagnostics(const LinearProgram& lp, const Disjunction& d,
                              const NonbasicFrame& frame,
                              const PointRayCollection& coll,
                              const std::vector<Cut>& cuts,
                              double max_bases = 200000.0);

struct EvalConfig {
  std::string instance_name = "instance";
  std::string mode = "both";  // gmic | vpc | both | splits | crosses | rounds
  std::vector<int> leaves = {2, 4, 8, 16, 32, 64};
  double cut_limit_factor = 1.0;
  double gen_time_limit_s = 900.0;
  double prlp_obj_limit_s = 5.0;
  double prlp_feas_limit_s = 60.0;
  // Known integer optimum; enumeration is attempted when absent.
  std::optional<double> ip_value;
  long long ip_enum_limit = 1000000;
  unsigned seed = 628;
  // Mirrors the MPS option so the report records the bound convention.
  bool int_default_unit_bounds = false;
  bool verbose = false;
};

struct EvalResult {
  std::vector<ReportRow> rows;
  std::vector<CutRecord> cut_records;
  // Set when the root pipeline dies of numerics; per-size failures only
  // annotate their own row.
  bool numerical_failure = false;
  std::vector<std::string> log;
};

// Full experiment pipeline for one instance: per disjunction size, generate,
// apply the rounding cuts, the disjunctive cuts, and both together to fresh
// copies, re-solve, and report the gaps; "best" and "combined" rows follow
// when more than one size ran. Throws std::invalid_argument on an unknown
// mode.
EvalResult run_instance(const LinearProgram& lp, const EvalConfig& cfg);

}  // namespace vpc
