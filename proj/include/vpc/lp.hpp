#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace vpc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { LE, GE, EQ };

// One constraint row stored sparsely; column indices strictly increasing.
struct SparseRow {
  std::vector<int> cols;
  std::vector<double> vals;

  void push(int col, double val) {
    cols.push_back(col);
    vals.push_back(val);
  }
  std::size_t size() const { return cols.size(); }
};

// Minimization LP/MIP in row form: rows[i] (sense rhs[i]), bounds on columns.
struct LinearProgram {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<SparseRow> rows;
  std::vector<RowSense> senses;
  std::vector<double> rhs;
  std::vector<double> objective;
  std::vector<double> col_lower;
  std::vector<double> col_upper;
  std::vector<bool> integer_flags;
  // True when the source declared a maximization objective and we negated it.
  bool objective_negated = false;
  std::string name;
  std::vector<std::string> row_names;
  std::vector<std::string> col_names;

  void validate() const;
  // Row activity a_i^T x for a structural point x (size n_cols).
  double row_activity(int row, const std::vector<double>& x) const;
  double objective_value(const std::vector<double>& x) const;
  bool is_row_satisfied(int row, const std::vector<double>& x, double tol) const;
  bool is_feasible(const std::vector<double>& x, double tol) const;
};

inline void LinearProgram::validate() const {
  if ((int)rows.size() != n_rows || (int)senses.size() != n_rows ||
      (int)rhs.size() != n_rows)
    throw std::invalid_argument("row arrays inconsistent with n_rows");
  if ((int)objective.size() != n_cols || (int)col_lower.size() != n_cols ||
      (int)col_upper.size() != n_cols || (int)integer_flags.size() != n_cols)
    throw std::invalid_argument("column arrays inconsistent with n_cols");
  for (int i = 0; i < n_rows; ++i) {
    int prev = -1;
    for (std::size_t k = 0; k < rows[i].cols.size(); ++k) {
      int c = rows[i].cols[k];
      if (c <= prev || c >= n_cols)
        throw std::invalid_argument("bad column index in row " + std::to_string(i));
      prev = c;
    }
  }
  for (int j = 0; j < n_cols; ++j)
    if (col_lower[j] > col_upper[j])
      throw std::invalid_argument("crossed bounds on column " + std::to_string(j));
}

inline double LinearProgram::row_activity(int row, const std::vector<double>& x) const {
  double a = 0.0;
  const SparseRow& r = rows[row];
  for (std::size_t k = 0; k < r.cols.size(); ++k) a += r.vals[k] * x[r.cols[k]];
  return a;
}

inline double LinearProgram::objective_value(const std::vector<double>& x) const {
  double v = 0.0;
  for (int j = 0; j < n_cols; ++j) v += objective[j] * x[j];
  return v;
}

inline bool LinearProgram::is_row_satisfied(int row, const std::vector<double>& x,
                                            double tol) const {
  double a = row_activity(row, x);
  switch (senses[row]) {
    case RowSense::LE: return a <= rhs[row] + tol;
    case RowSense::GE: return a >= rhs[row] - tol;
    case RowSense::EQ: return std::abs(a - rhs[row]) <= tol;
  }
  return false;
}

inline bool LinearProgram::is_feasible(const std::vector<double>& x, double tol) const {
  for (int j = 0; j < n_cols; ++j)
    if (x[j] < col_lower[j] - tol || x[j] > col_upper[j] + tol) return false;
  for (int i = 0; i < n_rows; ++i)
    if (!is_row_satisfied(i, x, tol)) return false;
  return true;
}

}  // namespace vpc
