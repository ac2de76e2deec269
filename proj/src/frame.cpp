#include "vpc/frame.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace vpc {

namespace {

Eigen::MatrixXd basis_matrix(const LinearProgram& lp, const std::vector<int>& basic) {
  int m = lp.n_rows, n = lp.n_cols;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, m);
  for (int p = 0; p < m; ++p) {
    int v = basic[p];
    if (v < n) {
      for (int i = 0; i < m; ++i) {
        const SparseRow& r = lp.rows[i];
        for (std::size_t k = 0; k < r.cols.size(); ++k)
          if (r.cols[k] == v) b(i, p) = r.vals[k];
      }
    } else {
      b(v - n, p) = 1.0;
    }
  }
  return b;
}

Eigen::VectorXd column_of(const LinearProgram& lp, int v) {
  Eigen::VectorXd col = Eigen::VectorXd::Zero(lp.n_rows);
  if (v < lp.n_cols) {
    for (int i = 0; i < lp.n_rows; ++i) {
      const SparseRow& r = lp.rows[i];
      for (std::size_t k = 0; k < r.cols.size(); ++k)
        if (r.cols[k] == v) col(i) = r.vals[k];
    }
  } else {
    col(v - lp.n_cols) = 1.0;
  }
  return col;
}

}  // namespace

NonbasicFrame::NonbasicFrame(std::vector<double> origin, std::vector<FrameRow> rows)
    : origin_(std::move(origin)), rows_(std::move(rows)) {
  int n = dim();
  if ((int)origin_.size() != n)
    throw std::invalid_argument("frame needs as many rows as structural variables");
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (std::size_t t = 0; t < rows_[k].g.cols.size(); ++t)
      r(k, rows_[k].g.cols[t]) = rows_[k].g.vals[t];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(r);
  if (!lu.isInvertible()) throw std::runtime_error("singular cobasis rows");
  Eigen::MatrixXd inv = lu.inverse();
  rinv_.assign(n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rinv_[i * n + j] = inv(i, j);
}

std::vector<double> NonbasicFrame::forward(const std::vector<double>& x) const {
  std::vector<double> q(dim());
  for (int k = 0; k < dim(); ++k) {
    double a = 0.0;
    const SparseRow& g = rows_[k].g;
    for (std::size_t t = 0; t < g.cols.size(); ++t) a += g.vals[t] * x[g.cols[t]];
    q[k] = rows_[k].scale * (a - rows_[k].h);
  }
  return q;
}

std::vector<double> NonbasicFrame::ray_image(const std::vector<double>& r) const {
  std::vector<double> q(dim());
  for (int k = 0; k < dim(); ++k) {
    double a = 0.0;
    const SparseRow& g = rows_[k].g;
    for (std::size_t t = 0; t < g.cols.size(); ++t) a += g.vals[t] * r[g.cols[t]];
    q[k] = rows_[k].scale * a;
  }
  return q;
}

std::vector<double> NonbasicFrame::inverse(const std::vector<double>& coords) const {
  int n = dim();
  std::vector<double> t(n), x(n, 0.0);
  for (int k = 0; k < n; ++k) t[k] = coords[k] / rows_[k].scale + rows_[k].h;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) x[i] += rinv_[i * n + k] * t[k];
  return x;
}

std::vector<double> NonbasicFrame::functional(const std::vector<double>& c) const {
  int n = dim();
  std::vector<double> f(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double v = 0.0;
    for (int j = 0; j < n; ++j) v += rinv_[j * n + k] * c[j];
    f[k] = v / rows_[k].scale;
  }
  return f;
}

void NonbasicFrame::cut_to_structural(const std::vector<double>& alpha_f,
                                      double beta_f, std::vector<double>* alpha,
                                      double* beta) const {
  int n = dim();
  alpha->assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double w = alpha_f[k] * rows_[k].scale;
    const SparseRow& g = rows_[k].g;
    for (std::size_t t = 0; t < g.cols.size(); ++t)
      (*alpha)[g.cols[t]] += w * g.vals[t];
  }
  double shift = 0.0;
  for (int j = 0; j < n; ++j) shift += (*alpha)[j] * origin_[j];
  *beta = beta_f + shift;
}

std::vector<double> NonbasicFrame::cut_to_frame(const std::vector<double>& alpha,
                                                double beta, double* beta_f) const {
  double shift = 0.0;
  for (int j = 0; j < dim(); ++j) shift += alpha[j] * origin_[j];
  *beta_f = beta - shift;
  return functional(alpha);
}

NonbasicFrame make_frame(const LinearProgram& lp, const SimplexSolution& sol) {
  int n = lp.n_cols, m = lp.n_rows;
  std::vector<double> origin(sol.primal_values.begin(),
                             sol.primal_values.begin() + n);
  std::vector<FrameRow> rows;
  rows.reserve(n);
  for (int v = 0; v < n + m; ++v) {
    VarStatus st = sol.nonbasic_states[v];
    if (st == VarStatus::Basic) continue;
    if (st == VarStatus::Free)
      throw std::runtime_error("free nonbasic variable has no frame row");
    FrameRow fr;
    fr.var = v;
    if (v < n) {
      if (st == VarStatus::AtLower) {
        fr.g.push(v, 1.0);
        fr.h = lp.col_lower[v];
      } else {
        fr.g.push(v, -1.0);
        fr.h = -lp.col_upper[v];
      }
      fr.scale = 1.0;
    } else {
      int i = v - n;
      double maxc = 0.0;
      for (double val : lp.rows[i].vals) maxc = std::max(maxc, std::abs(val));
      if (maxc == 0.0) throw std::runtime_error("empty row in cobasis");
      // Slack at lower means the row holds with <= locally; at upper (the
      // zero side of a >= row) the feasible side is the opposite one.
      double sgn = st == VarStatus::AtLower ? -1.0 : 1.0;
      const SparseRow& r = lp.rows[i];
      for (std::size_t k = 0; k < r.cols.size(); ++k)
        fr.g.push(r.cols[k], sgn * r.vals[k]);
      fr.h = sgn * lp.rhs[i];
      fr.scale = 1.0 / maxc;
    }
    rows.push_back(std::move(fr));
  }
  if ((int)rows.size() != n)
    throw std::runtime_error("cobasis does not have dim-many rows");
  return NonbasicFrame(std::move(origin), std::move(rows));
}

std::vector<ConeRay> basis_cone_rays(const LinearProgram& lp,
                                     const SimplexSolution& sol) {
  int n = lp.n_cols, m = lp.n_rows;
  Eigen::MatrixXd b = basis_matrix(lp, sol.basic_indices);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
  if (m > 0 && !lu.isInvertible()) throw std::runtime_error("singular basis");
  std::vector<ConeRay> out;
  for (int v = 0; v < n + m; ++v) {
    VarStatus st = sol.nonbasic_states[v];
    if (st == VarStatus::Basic) continue;
    if (st == VarStatus::Free)
      throw std::runtime_error("free nonbasic variable has no cone ray");
    double delta = st == VarStatus::AtLower ? 1.0 : -1.0;
    ConeRay ray;
    ray.nonbasic_var = v;
    ray.direction.assign(n, 0.0);
    if (v < n) ray.direction[v] = delta;
    if (m > 0) {
      Eigen::VectorXd w = lu.solve(column_of(lp, v));
      for (int p = 0; p < m; ++p) {
        int bv = sol.basic_indices[p];
        if (bv < n) ray.direction[bv] -= delta * w(p);
      }
    }
    out.push_back(std::move(ray));
  }
  return out;
}

TableauRow tableau_row(const LinearProgram& lp, const SimplexSolution& sol,
                       int basic_var) {
  int n = lp.n_cols, m = lp.n_rows;
  int pos = -1;
  for (int p = 0; p < m; ++p)
    if (sol.basic_indices[p] == basic_var) pos = p;
  if (pos < 0) throw std::invalid_argument("variable is not basic");
  Eigen::MatrixXd b = basis_matrix(lp, sol.basic_indices);
  Eigen::FullPivLU<Eigen::MatrixXd> lut(b.transpose());
  Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
  e(pos) = 1.0;
  Eigen::VectorXd z = lut.solve(e);
  TableauRow row;
  row.basic_var = basic_var;
  double rhs = sol.primal_values[basic_var];
  for (int v = 0; v < n + m; ++v) {
    if (sol.nonbasic_states[v] == VarStatus::Basic) continue;
    double coef = z.dot(column_of(lp, v));
    if (std::abs(coef) < 1e-12) continue;
    row.vars.push_back(v);
    row.coefs.push_back(coef);
    rhs += coef * sol.primal_values[v];
  }
  row.rhs = rhs;
  return row;
}

bool is_degenerate_vertex(const LinearProgram& lp, const SimplexSolution& sol,
                          double tol) {
  int n = lp.n_cols;
  for (int v : sol.basic_indices) {
    double lo, hi;
    if (v < n) {
      lo = lp.col_lower[v];
      hi = lp.col_upper[v];
    } else {
      int i = v - n;
      lo = lp.senses[i] == RowSense::GE ? -kInf : 0.0;
      hi = lp.senses[i] == RowSense::LE ? kInf : 0.0;
    }
    double x = sol.primal_values[v];
    if ((std::isfinite(lo) && std::abs(x - lo) <= tol) ||
        (std::isfinite(hi) && std::abs(x - hi) <= tol))
      return true;
  }
  return false;
}

}  // namespace vpc
