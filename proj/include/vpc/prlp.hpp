#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vpc/cut.hpp"
#include "vpc/cutgen.hpp"
#include "vpc/disjunction.hpp"
#include "vpc/frame.hpp"
#include "vpc/lp.hpp"
#include "vpc/pointray.hpp"
#include "vpc/simplex.hpp"

namespace vpc {

struct EmptyCollection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One separation row over the frame variables: coefs . alpha >= rhs, or an
// equality when eq is set. Point rows carry rhs beta_norm, ray rows rhs 0.
// Rows with a single nonzero act as bounds on that alpha coordinate; the
// solver keeps them as singleton columns of the dual.
struct PrlpRow {
  std::vector<double> coefs;
  double rhs = 0.0;
  bool eq = false;
  bool is_point = false;
  int entry_index = -1;  // into the collection's points[] or rays[]
  int term_id = -1;      // smallest owner for shared rays
  int bound_var = -1;
};

struct Prlp {
  int dim = 0;
  double beta_norm = 1.0;
  std::vector<PrlpRow> rows;  // every point row before every ray row
  int n_points = 0;
};

// beta_norm defaults to the geometric mean of the point max-norms clamped to
// [1e-3, 1e3]; beta_override forces a specific normalization instead.
Prlp assemble_prlp(const PointRayCollection& coll,
                   std::optional<double> beta_override = std::nullopt);

enum class PrlpStatus { Optimal, Infeasible, Unbounded, TimeLimit, NumericalFailure };
const char* prlp_status_name(PrlpStatus s);

// Minimizes w . alpha over the separation rows through the explicit dual,
// which has one column per row; objective changes are rhs changes there, so
// one warm-started basis carries across the whole objective schedule.
class PrlpSolver {
 public:
  explicit PrlpSolver(const Prlp& prlp);

  struct Result {
    PrlpStatus status = PrlpStatus::NumericalFailure;
    std::vector<double> alpha;
    double value = 0.0;
    double solve_time_s = 0.0;
    long iterations = 0;
  };

  Result solve(const std::vector<double>& w, double time_limit_s = kInf);
  // Pins a point row to equality (used for the least-objective point after
  // the opening objectives). A single-nonzero row fixes its alpha variable.
  void make_row_equality(int row_index);
  const Prlp& prlp() const { return prlp_; }

 private:
  Prlp prlp_;
  LinearProgram dual_;
  std::optional<Basis> warm_;
};

enum class Feasibility { FeasibleByCertificate, NeedSolve, InfeasibleLikely };
const char* feasibility_name(Feasibility f);

struct FeasibilityProbe {
  Feasibility kind = Feasibility::NeedSolve;
  // Scaled copy of the frame objective; feasible whenever kind is certified,
  // and its structural image is the objective cut c.x >= c.p*.
  std::vector<double> certificate;
  double c_dot_pstar = 0.0;
  int p_star_row = -1;
};

// Certifies feasibility without a solve when the frame objective separates
// the least-objective point from the vertex. Never reports InfeasibleLikely
// itself; that verdict belongs to the caller after a failed opening solve.
FeasibilityProbe quick_feasibility(const Prlp& prlp,
                                   const std::vector<double>& c_frame);

enum class FailureCategory { Duplicate, Unbounded, TimeLimit, Dynamism };
const char* failure_category_name(FailureCategory c);

struct ObjectiveOutcome {
  std::optional<Cut> cut;
  std::optional<FailureCategory> failure;
  std::string objective_label;
  double solve_time_s = 0.0;
  // Raw separation solution whenever the solve reached optimality, whether
  // or not the pool kept the mapped cut.
  std::vector<double> alpha_frame;
  // Set when the solve hit numerical trouble; neither cut nor failure then.
  bool numerical = false;
  PrlpStatus status = PrlpStatus::NumericalFailure;
};

struct FailureStats {
  int objectives_tried = 0;
  int cuts_found = 0;
  int fail_duplicate = 0;
  int fail_unbounded = 0;
  int fail_time = 0;
  int fail_dynamism = 0;
  int loop_objectives = 0;
  Feasibility feasibility = Feasibility::NeedSolve;
  std::string stop_reason;
  std::vector<std::string> log;

  int total_failures() const {
    return fail_duplicate + fail_unbounded + fail_time + fail_dynamism;
  }
  bool accounting_identity() const {
    return objectives_tried == cuts_found + total_failures();
  }
};

// Failure-rate stopping rule: the acceptable rate tightens from 0.95 to 0.90
// once "many" cuts exist and to 0.80 once "many" objectives were tried. The
// rate test runs after each new cut; an opening streak of all-failures long
// enough to defeat the loosest rate aborts on its own.
struct FailureLimiter {
  double phi_few = 0.95;
  double phi_many = 0.90;
  double phi_many_obj = 0.80;
  int n_few = 1;
  int n_many = 1;
  int n_many_obj = 20;

  void init(int cut_limit);
  int early_abort_count() const;
  double active_threshold(const FailureStats& s) const;
  bool should_stop(const FailureStats& s, bool last_was_cut) const;
};

struct Algorithm1Limits {
  double cut_limit_factor = 1.0;
  double gen_time_limit_s = 900.0;
  double obj_time_limit_s = 5.0;
  double feas_time_limit_s = 60.0;
  double away_tol = 1e-5;
};

struct Algorithm1Result {
  CutPool pool;
  FailureStats stats;
  std::optional<Cut> certificate_cut;
  double beta_norm = 0.0;
  int cut_limit = 0;
};

// Runs one plain separation objective: solve, map the frame cut through the
// frame, post-process, and offer to the pool. Numerical trouble is flagged
// on the outcome and ends the round at the caller.
ObjectiveOutcome solve_objective(PrlpSolver& solver, const std::vector<double>& w,
                                 const std::string& label, double time_limit_s,
                                 CutPool& pool, const NonbasicFrame& frame,
                                 const LinearProgram& lp,
                                 const std::string& leaves_tag = "");

// Full objective schedule for one disjunction: all-ones, the re-optimized
// vertex after adding the rounding cuts, the least-objective point, then the
// violated points and rays in decreasing angle with the objective, with rows
// made tight by each new cut dropped from the queue. Returns the partial
// pool on any stop criterion.
Algorithm1Result run_algorithm1(const LinearProgram& lp, const SimplexSolution& root,
                                const Disjunction& d, const NonbasicFrame& frame,
                                const PointRayCollection& coll,
                                const Algorithm1Limits& limits = {});

}  // namespace vpc
