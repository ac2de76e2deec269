#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vpc/cut.hpp"
#include "vpc/lp.hpp"
#include "vpc/simplex.hpp"

namespace vpc {

// Thrown when the LP machinery reports a numerical failure; callers surface
// it as exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BoundChange {
  int col = -1;
  bool is_upper = false;
  double value = 0.0;
};

enum class Pruned { No, Infeasible, Integral, Bound };

struct Term {
  int id = -1;
  std::vector<BoundChange> bound_changes;
  SimplexSolution solution;  // meaningless when pruned == Infeasible
  Pruned pruned = Pruned::No;
  double value = kInf;
};

struct Disjunction {
  std::string source;
  std::vector<Term> terms;
  int p_star_index = -1;           // feasible term with the least LP value
  double best_term_value = kInf;   // the disjunctive lower bound
  std::vector<Cut> one_sided_cuts;
  bool proved_optimality = false;
  std::optional<double> incumbent;
  bool time_limit_hit = false;
};

struct TreeConfig {
  int max_leaves = 2;
  int strong_branch_candidates = 5;
  double time_limit_s = kInf;
  double away_tol = 1e-5;
};

// Integer columns whose value is more than away_tol from the nearest integer,
// ascending index.
std::vector<int> fractional_integers(const LinearProgram& lp,
                                     const std::vector<double>& x,
                                     double away_tol = 1e-5);

LinearProgram term_lp(const LinearProgram& lp, const Term& term);

Disjunction build_partial_tree(const LinearProgram& lp, const SimplexSolution& root,
                               const TreeConfig& cfg);
Disjunction elementary_split(const LinearProgram& lp, const SimplexSolution& root,
                             int col);
Disjunction cross_disjunction(const LinearProgram& lp, const SimplexSolution& root,
                              int col_a, int col_b);

double disjunctive_lower_bound(const Disjunction& d);

std::string to_debug_json(const Disjunction& d);

}  // namespace vpc
