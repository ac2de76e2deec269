#include "vpc/simplex.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "dense_lu.hpp"

namespace vpc {

namespace {

constexpr double kDegenStep = 1e-12;

struct Eta {
  int r;
  Eigen::VectorXd w;  // E = I + (w - e_r) e_r^T
};

class Solver {
 public:
  Solver(const LinearProgram& lp, const SimplexTolerances& tol, const SolveLimits& lim)
      : lp_(lp), tol_(tol), lim_(lim), m_(lp.n_rows), n_(lp.n_cols), nv_(m_ + n_) {
    build_columns();
    build_bounds();
  }

  SimplexSolution run(const Basis* warm) {
    start_ = std::chrono::steady_clock::now();
    if (!install_basis(warm)) install_slack_basis();
    if (!refactor()) return finish(SolveStatus::NumericalFailure);
    return iterate();
  }

 private:
  const LinearProgram& lp_;
  SimplexTolerances tol_;
  SolveLimits lim_;
  int m_, n_, nv_;

  // CSC of the structural columns.
  std::vector<int> cptr_, cidx_;
  std::vector<double> cval_;

  std::vector<double> lower_, upper_, cost_;
  std::vector<double> x_;
  std::vector<VarStatus> state_;
  std::vector<int> basic_;
  std::vector<int> pos_;  // variable -> basis slot, -1 if nonbasic

  Eigen::MatrixXd bmat_;
  DenseLu lu_;
  std::vector<Eta> etas_;
  int pivots_since_refactor_ = 0;
  bool just_refactored_ = false;

  long iters_ = 0;
  int degen_streak_ = 0;
  bool bland_ = false;
  std::chrono::steady_clock::time_point start_;

  void build_columns() {
    std::vector<int> counts(n_, 0);
    for (int i = 0; i < m_; ++i)
      for (int c : lp_.rows[i].cols) ++counts[c];
    cptr_.assign(n_ + 1, 0);
    for (int j = 0; j < n_; ++j) cptr_[j + 1] = cptr_[j] + counts[j];
    cidx_.resize(cptr_[n_]);
    cval_.resize(cptr_[n_]);
    std::vector<int> fill(cptr_.begin(), cptr_.end() - 1);
    for (int i = 0; i < m_; ++i) {
      const SparseRow& r = lp_.rows[i];
      for (std::size_t k = 0; k < r.cols.size(); ++k) {
        int j = r.cols[k];
        cidx_[fill[j]] = i;
        cval_[fill[j]] = r.vals[k];
        ++fill[j];
      }
    }
  }

  void build_bounds() {
    lower_.resize(nv_);
    upper_.resize(nv_);
    cost_.assign(nv_, 0.0);
    for (int j = 0; j < n_; ++j) {
      lower_[j] = lp_.col_lower[j];
      upper_[j] = lp_.col_upper[j];
      cost_[j] = lp_.objective[j];
    }
    for (int i = 0; i < m_; ++i) {
      switch (lp_.senses[i]) {
        case RowSense::LE: lower_[n_ + i] = 0.0; upper_[n_ + i] = kInf; break;
        case RowSense::GE: lower_[n_ + i] = -kInf; upper_[n_ + i] = 0.0; break;
        case RowSense::EQ: lower_[n_ + i] = 0.0; upper_[n_ + i] = 0.0; break;
      }
    }
  }

  double bound_value(int v) const {
    switch (state_[v]) {
      case VarStatus::AtLower: return lower_[v];
      case VarStatus::AtUpper: return upper_[v];
      case VarStatus::Free: return 0.0;
      case VarStatus::Basic: break;
    }
    return x_[v];
  }

  VarStatus default_state(int v) const {
    if (std::isfinite(lower_[v])) return VarStatus::AtLower;
    if (std::isfinite(upper_[v])) return VarStatus::AtUpper;
    return VarStatus::Free;
  }

  void install_slack_basis() {
    state_.assign(nv_, VarStatus::Basic);
    basic_.resize(m_);
    pos_.assign(nv_, -1);
    x_.assign(nv_, 0.0);
    for (int j = 0; j < n_; ++j) {
      state_[j] = default_state(j);
      x_[j] = bound_value(j);
    }
    for (int i = 0; i < m_; ++i) {
      basic_[i] = n_ + i;
      pos_[n_ + i] = i;
      state_[n_ + i] = VarStatus::Basic;
    }
  }

  bool install_basis(const Basis* warm) {
    if (!warm) return false;
    if ((int)warm->basic.size() != m_ || (int)warm->states.size() != nv_) return false;
    std::vector<bool> seen(nv_, false);
    for (int v : warm->basic) {
      if (v < 0 || v >= nv_ || seen[v]) return false;
      seen[v] = true;
    }
    basic_ = warm->basic;
    state_ = warm->states;
    pos_.assign(nv_, -1);
    for (int i = 0; i < m_; ++i) {
      pos_[basic_[i]] = i;
      state_[basic_[i]] = VarStatus::Basic;
    }
    x_.assign(nv_, 0.0);
    for (int v = 0; v < nv_; ++v) {
      if (pos_[v] >= 0) continue;
      if (state_[v] == VarStatus::Basic) state_[v] = default_state(v);
      if (state_[v] == VarStatus::AtLower && !std::isfinite(lower_[v]))
        state_[v] = default_state(v);
      if (state_[v] == VarStatus::AtUpper && !std::isfinite(upper_[v]))
        state_[v] = default_state(v);
      x_[v] = bound_value(v);
    }
    // Verify nonsingularity; callers may hand us a stale basis.
    Eigen::MatrixXd b = basis_matrix();
    DenseLu probe;
    return probe.factor(b);
  }

  Eigen::MatrixXd basis_matrix() const {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m_, m_);
    for (int p = 0; p < m_; ++p) {
      int v = basic_[p];
      if (v < n_) {
        for (int k = cptr_[v]; k < cptr_[v + 1]; ++k) b(cidx_[k], p) = cval_[k];
      } else {
        b(v - n_, p) = 1.0;
      }
    }
    return b;
  }

  Eigen::VectorXd column_of(int v) const {
    Eigen::VectorXd col = Eigen::VectorXd::Zero(m_);
    if (v < n_) {
      for (int k = cptr_[v]; k < cptr_[v + 1]; ++k) col(cidx_[k]) = cval_[k];
    } else {
      col(v - n_) = 1.0;
    }
    return col;
  }

  double col_dot(int v, const Eigen::VectorXd& y) const {
    if (v >= n_) return y(v - n_);
    double s = 0.0;
    for (int k = cptr_[v]; k < cptr_[v + 1]; ++k) s += cval_[k] * y(cidx_[k]);
    return s;
  }

  Eigen::VectorXd ftran(Eigen::VectorXd v) const {
    v = lu_.solve(v);
    for (const Eta& e : etas_) {
      double zr = v(e.r) / e.w(e.r);
      v -= zr * e.w;
      v(e.r) = zr;
    }
    return v;
  }

  Eigen::VectorXd btran(Eigen::VectorXd v) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = it->w.dot(v) - it->w(it->r) * v(it->r);
      v(it->r) = (v(it->r) - s) / it->w(it->r);
    }
    return lu_.solve_transpose(v);
  }

  Eigen::VectorXd effective_rhs() const {
    Eigen::VectorXd rhs(m_);
    for (int i = 0; i < m_; ++i) rhs(i) = lp_.rhs[i];
    for (int v = 0; v < nv_; ++v) {
      if (pos_[v] >= 0 || x_[v] == 0.0) continue;
      if (v < n_) {
        for (int k = cptr_[v]; k < cptr_[v + 1]; ++k)
          rhs(cidx_[k]) -= cval_[k] * x_[v];
      } else {
        rhs(v - n_) -= x_[v];
      }
    }
    return rhs;
  }

  bool refactor() {
    bmat_ = basis_matrix();
    if (!lu_.factor(bmat_)) return false;
    etas_.clear();
    pivots_since_refactor_ = 0;
    Eigen::VectorXd rhs = effective_rhs();
    Eigen::VectorXd xb = lu_.solve(rhs);
    double resid = m_ ? (bmat_ * xb - rhs).cwiseAbs().maxCoeff() : 0.0;
    if (resid > tol_.residual) return false;
    for (int p = 0; p < m_; ++p) x_[basic_[p]] = xb(p);
    just_refactored_ = true;
    return true;
  }

  bool any_infeasible() const {
    for (int p = 0; p < m_; ++p) {
      int v = basic_[p];
      if (x_[v] < lower_[v] - tol_.feasibility || x_[v] > upper_[v] + tol_.feasibility)
        return true;
    }
    return false;
  }

  // Pick the entering variable; dir receives +1 (increase) or -1 (decrease).
  int price(const Eigen::VectorXd& y, bool phase1, int* dir) const {
    int best = -1;
    double best_score = tol_.dual;
    for (int v = 0; v < nv_; ++v) {
      if (pos_[v] >= 0) continue;
      if (lower_[v] == upper_[v]) continue;
      double c = phase1 ? 0.0 : cost_[v];
      double d = c - col_dot(v, y);
      double score;
      int want_dir;
      switch (state_[v]) {
        case VarStatus::AtLower:
          score = -d;
          want_dir = 1;
          break;
        case VarStatus::AtUpper:
          score = d;
          want_dir = -1;
          break;
        case VarStatus::Free:
          score = std::abs(d);
          want_dir = d < 0 ? 1 : -1;
          break;
        default: continue;
      }
      if (score <= tol_.dual) continue;
      if (bland_) {
        if (best < 0) {
          best = v;
          *dir = want_dir;
        }
        continue;
      }
      if (score > best_score) {
        best_score = score;
        best = v;
        *dir = want_dir;
      }
    }
    return best;
  }

  SimplexSolution iterate() {
    while (true) {
      if (pivots_since_refactor_ >= tol_.refactor_every) {
        if (!refactor()) return finish(SolveStatus::NumericalFailure);
      }
      if (iters_ >= lim_.max_iterations) return finish(SolveStatus::IterationLimit);
      if (std::isfinite(lim_.time_limit_s)) {
        double el = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                  start_).count();
        if (el > lim_.time_limit_s) return finish(SolveStatus::TimeLimit);
      }

      bool phase1 = any_infeasible();
      Eigen::VectorXd cb(m_);
      for (int p = 0; p < m_; ++p) {
        int v = basic_[p];
        if (phase1) {
          if (x_[v] < lower_[v] - tol_.feasibility) cb(p) = -1.0;
          else if (x_[v] > upper_[v] + tol_.feasibility) cb(p) = 1.0;
          else cb(p) = 0.0;
        } else {
          cb(p) = cost_[v];
        }
      }
      Eigen::VectorXd y = m_ ? btran(cb) : Eigen::VectorXd(0);

      int dir = 1;
      int q = price(y, phase1, &dir);
      if (q < 0) {
        if (phase1) return finish(SolveStatus::Infeasible);
        return finish(SolveStatus::Optimal);
      }

      Eigen::VectorXd w = m_ ? ftran(column_of(q)) : Eigen::VectorXd(0);

      // Ratio test. Entering moves by t >= 0 in direction dir; basic p changes
      // at rate -dir*w(p).
      double t_own = upper_[q] - lower_[q];
      if (!std::isfinite(t_own)) t_own = kInf;
      double t_best = t_own;
      int r_best = -1;       // -1 means the entering variable's own bound flip
      double target_best = 0.0;
      for (int p = 0; p < m_; ++p) {
        if (std::abs(w(p)) <= tol_.pivot) continue;
        double rate = -dir * w(p);
        int v = basic_[p];
        double xv = x_[v];
        double target;
        if (rate > 0) {
          if (phase1 && xv < lower_[v] - tol_.feasibility) target = lower_[v];
          // Already above the upper bound and rising away from it: no breakpoint.
          else if (xv > upper_[v] + tol_.feasibility) continue;
          else if (std::isfinite(upper_[v])) target = upper_[v];
          else continue;
        } else {
          if (phase1 && xv > upper_[v] + tol_.feasibility) target = upper_[v];
          // Already below the lower bound and falling away from it: no breakpoint.
          else if (xv < lower_[v] - tol_.feasibility) continue;
          else if (std::isfinite(lower_[v])) target = lower_[v];
          else continue;
        }
        double t = (target - xv) / rate;
        if (t < 0.0) t = 0.0;
        bool take;
        if (t < t_best - kDegenStep) {
          take = true;
        } else if (t <= t_best + kDegenStep && r_best >= 0) {
          take = bland_ ? v < basic_[r_best]
                        : std::abs(w(p)) > std::abs(w(r_best));
        } else {
          take = t < t_best;
        }
        if (take) {
          t_best = t;
          r_best = p;
          target_best = target;
        }
      }

      if (!std::isfinite(t_best)) {
        if (!phase1) {
          SimplexSolution out = finish(SolveStatus::Unbounded);
          out.unbounded_ray.assign(n_, 0.0);
          if (q < n_) out.unbounded_ray[q] = dir;
          for (int p = 0; p < m_; ++p) {
            int v = basic_[p];
            if (v < n_) out.unbounded_ray[v] = -dir * w(p);
          }
          return out;
        }
        return finish(SolveStatus::NumericalFailure);
      }

      if (r_best >= 0 && std::abs(w(r_best)) <= 1e2 * tol_.pivot) {
        if (!just_refactored_) {
          if (!refactor()) return finish(SolveStatus::NumericalFailure);
          continue;
        }
        return finish(SolveStatus::NumericalFailure);
      }

      ++iters_;
      just_refactored_ = false;
      double t = t_best;
      for (int p = 0; p < m_; ++p) x_[basic_[p]] += -dir * w(p) * t;
      if (r_best < 0) {
        // Bound flip.
        state_[q] = state_[q] == VarStatus::AtLower ? VarStatus::AtUpper
                                                    : VarStatus::AtLower;
        x_[q] = bound_value(q);
      } else {
        int leave = basic_[r_best];
        x_[q] = bound_value(q) + dir * t;
        x_[leave] = target_best;
        state_[leave] = target_best == lower_[leave] ? VarStatus::AtLower
                                                     : VarStatus::AtUpper;
        state_[q] = VarStatus::Basic;
        basic_[r_best] = q;
        pos_[leave] = -1;
        pos_[q] = r_best;
        etas_.push_back({r_best, w});
        ++pivots_since_refactor_;
      }

      if (t <= kDegenStep) {
        if (++degen_streak_ > 2 * (m_ + n_)) bland_ = true;
      } else {
        degen_streak_ = 0;
        bland_ = false;
      }
    }
  }

  SimplexSolution finish(SolveStatus status) {
    SimplexSolution out;
    out.status = status;
    out.iterations = iters_;
    out.basic_indices = basic_;
    out.nonbasic_states = state_;
    out.primal_values = x_;
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) obj += cost_[j] * x_[j];
    out.objective_value = obj;
    if (m_ > 0 && (status == SolveStatus::Optimal || status == SolveStatus::Unbounded ||
                   status == SolveStatus::Infeasible)) {
      Eigen::VectorXd cb(m_);
      for (int p = 0; p < m_; ++p) cb(p) = cost_[basic_[p]];
      Eigen::VectorXd y = btran(cb);
      out.duals.assign(m_, 0.0);
      for (int i = 0; i < m_; ++i) out.duals[i] = y(i);
      out.reduced_costs.assign(nv_, 0.0);
      for (int v = 0; v < nv_; ++v) {
        if (pos_[v] >= 0) continue;
        out.reduced_costs[v] = cost_[v] - col_dot(v, y);
      }
    } else {
      out.duals.assign(m_, 0.0);
      out.reduced_costs.assign(nv_, 0.0);
      if (m_ == 0)
        for (int v = 0; v < nv_; ++v) out.reduced_costs[v] = cost_[v];
    }
    if (status == SolveStatus::Optimal) {
      // Nonbasic variables with equal bounds carry no geometric side of their
      // own; label them by the sign of the reduced cost so that downstream
      // consumers relax them in the direction that cannot cut off the basis.
      for (int v = 0; v < nv_; ++v) {
        if (pos_[v] >= 0) continue;
        if (lower_[v] == upper_[v] && std::isfinite(lower_[v]))
          out.nonbasic_states[v] = out.reduced_costs[v] >= 0.0 ? VarStatus::AtLower
                                                               : VarStatus::AtUpper;
      }
    }
    return out;
  }
};

}  // namespace

SimplexSolution solve_lp(const LinearProgram& lp, const Basis* warm_start,
                         const SolveLimits& limits, const SimplexTolerances& tol) {
  lp.validate();
  Solver s(lp, tol, limits);
  return s.run(warm_start);
}

}  // namespace vpc
