#pragma once

#include "vpc/lp.hpp"

namespace vpc::fixtures {

// Tiny knapsack with a single fractional variable.
//   min -x  s.t.  2x <= 3,  x in [0,10] integer
// LP optimum x = 1.5 (value -1.5), integer optimum x = 1 (value -1).
inline LinearProgram knap1() {
  LinearProgram lp;
  lp.name = "knap1";
  lp.n_cols = 1;
  lp.n_rows = 1;
  lp.objective = {-1.0};
  lp.col_lower = {0.0};
  lp.col_upper = {10.0};
  lp.integer_flags = {true};
  SparseRow r;
  r.push(0, 2.0);
  lp.rows = {r};
  lp.senses = {RowSense::LE};
  lp.rhs = {3.0};
  lp.row_names = {"cap"};
  lp.col_names = {"x"};
  return lp;
}

// Two-variable knapsack.
//   min -2x1 - x2  s.t.  2x1 + 2x2 <= 3,  x in [0,1]^2 integer
// LP optimum (1, 0.5) value -2.5; integer optimum value -2 at (1,0).
inline LinearProgram knap2() {
  LinearProgram lp;
  lp.name = "knap2";
  lp.n_cols = 2;
  lp.n_rows = 1;
  lp.objective = {-2.0, -1.0};
  lp.col_lower = {0.0, 0.0};
  lp.col_upper = {1.0, 1.0};
  lp.integer_flags = {true, true};
  SparseRow r;
  r.push(0, 2.0);
  r.push(1, 2.0);
  lp.rows = {r};
  lp.senses = {RowSense::LE};
  lp.rhs = {3.0};
  lp.row_names = {"cap"};
  lp.col_names = {"x1", "x2"};
  return lp;
}

// Three-variable instance whose split on x1 shows that collecting term optima
// plus their polytope neighbors is not enough for validity unless the term
// optima rows are forced tight. Stated as max x3; stored negated.
inline LinearProgram cube3() {
  LinearProgram lp;
  lp.name = "cube3";
  lp.n_cols = 3;
  lp.n_rows = 8;
  lp.objective = {0.0, 0.0, -1.0};
  lp.objective_negated = true;
  lp.col_lower = {0.0, 0.0, 0.0};
  lp.col_upper = {1.0, 1.0, 1.0};
  lp.integer_flags = {true, false, false};
  auto row = [](std::initializer_list<double> dense) {
    SparseRow r;
    int j = 0;
    for (double v : dense) {
      if (v != 0.0) r.push(j, v);
      ++j;
    }
    return r;
  };
  lp.rows = {
      row({0.0, 0.0, -1.0}),
      row({-7.0 / 4.0, 5.0, -2.0}),
      row({-1.0, -5.0, 2.0}),
      row({-1.0, -20.0 / 3.0, 7.0 / 3.0}),
      row({1.0, -1.0, 3.0 / 2.0}),
      row({2.0, -1.0, 3.0}),
      row({-1.0, 4.0, 2.0}),
      row({-1.0, 4.0, 0.0}),
  };
  lp.senses.assign(8, RowSense::LE);
  lp.rhs = {-0.5, 1.0, -1.0, -1.5, 1.5, 3.5, 3.5, 2.0};
  lp.row_names = {"r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8"};
  lp.col_names = {"x1", "x2", "x3"};
  return lp;
}

}  // namespace vpc::fixtures
