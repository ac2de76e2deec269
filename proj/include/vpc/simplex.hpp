#pragma once

#include <optional>
#include <vector>

#include "vpc/lp.hpp"

namespace vpc {

enum class SolveStatus {
  Optimal,
  Infeasible,
  Unbounded,
  IterationLimit,
  TimeLimit,
  NumericalFailure,
};

enum class VarStatus { Basic, AtLower, AtUpper, Free };

// Variable indexing convention throughout: 0..n_cols-1 structural, then
// n_cols..n_cols+n_rows-1 the logical (slack) of each row.
struct Basis {
  std::vector<int> basic;           // n_rows entries, variable indices
  std::vector<VarStatus> states;    // n_cols + n_rows entries
};

struct SimplexTolerances {
  double feasibility = 1e-7;
  double dual = 1e-7;
  double pivot = 1e-9;
  double residual = 1e-5;
  int refactor_every = 50;
};

struct SolveLimits {
  long max_iterations = 200000;
  double time_limit_s = kInf;
};

struct SimplexSolution {
  SolveStatus status = SolveStatus::NumericalFailure;
  // Structural values then slack values (slack s_i = b_i - a_i^T x).
  std::vector<double> primal_values;
  double objective_value = 0.0;
  std::vector<int> basic_indices;        // row -> variable
  std::vector<VarStatus> nonbasic_states; // per variable, Basic for basics
  std::vector<double> duals;             // one per row
  std::vector<double> reduced_costs;     // one per variable (incl. slacks)
  // For Unbounded: improving ray, structural part only (size n_cols).
  std::vector<double> unbounded_ray;
  long iterations = 0;

  double structural(int j) const { return primal_values[j]; }
};

// Bounded-variable primal simplex, minimization. Slacks: LE rows get s in
// [0, inf), GE rows s in (-inf, 0], EQ rows s fixed at 0.
SimplexSolution solve_lp(const LinearProgram& lp,
                         const Basis* warm_start = nullptr,
                         const SolveLimits& limits = {},
                         const SimplexTolerances& tol = {});

inline Basis basis_of(const SimplexSolution& s) {
  return Basis{s.basic_indices, s.nonbasic_states};
}

}  // namespace vpc
