#include "vpc/prlp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>

namespace vpc {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) {
  return std::sqrt(dot(a, a));
}

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

int ceil_guarded(double v) { return (int)std::ceil(v - 1e-9); }

}  // namespace

Prlp assemble_prlp(const PointRayCollection& coll,
                   std::optional<double> beta_override) {
  if (coll.points.empty())
    throw EmptyCollection("point-ray collection has no points");
  Prlp prlp;
  prlp.dim = (int)coll.points.front().frame.size();

  double beta = 1.0;
  if (beta_override) {
    beta = *beta_override;
  } else {
    double log_sum = 0.0;
    for (const PointEntry& p : coll.points) {
      double nrm = 0.0;
      for (double v : p.frame) nrm = std::max(nrm, std::abs(v));
      log_sum += std::log(std::max(nrm, 1e-12));
    }
    beta = std::exp(log_sum / (double)coll.points.size());
    beta = std::clamp(beta, 1e-3, 1e3);
  }
  prlp.beta_norm = beta;

  for (std::size_t i = 0; i < coll.points.size(); ++i) {
    const PointEntry& p = coll.points[i];
    PrlpRow row;
    row.coefs = p.frame;
    row.rhs = beta;
    row.eq = p.optimum_tight;
    row.is_point = true;
    row.entry_index = (int)i;
    row.term_id = p.term_id;
    row.bound_var = p.bound_var;
    prlp.rows.push_back(std::move(row));
  }
  prlp.n_points = (int)prlp.rows.size();
  for (std::size_t i = 0; i < coll.rays.size(); ++i) {
    const RayEntry& r = coll.rays[i];
    PrlpRow row;
    row.coefs = r.frame;
    row.rhs = 0.0;
    row.is_point = false;
    row.entry_index = (int)i;
    row.term_id = r.owners.empty()
                      ? -1
                      : *std::min_element(r.owners.begin(), r.owners.end());
    row.bound_var = r.bound_var;
    prlp.rows.push_back(std::move(row));
  }
  return prlp;
}

const char* prlp_status_name(PrlpStatus s) {
  switch (s) {
    case PrlpStatus::Optimal: return "optimal";
    case PrlpStatus::Infeasible: return "infeasible";
    case PrlpStatus::Unbounded: return "unbounded";
    case PrlpStatus::TimeLimit: return "time_limit";
    case PrlpStatus::NumericalFailure: return "numerical_failure";
  }
  return "?";
}

const char* feasibility_name(Feasibility f) {
  switch (f) {
    case Feasibility::FeasibleByCertificate: return "feasible_by_certificate";
    case Feasibility::NeedSolve: return "need_solve";
    case Feasibility::InfeasibleLikely: return "infeasible_likely";
  }
  return "?";
}

const char* failure_category_name(FailureCategory c) {
  switch (c) {
    case FailureCategory::Duplicate: return "duplicate";
    case FailureCategory::Unbounded: return "unbounded";
    case FailureCategory::TimeLimit: return "time_limit";
    case FailureCategory::Dynamism: return "dynamism";
  }
  return "?";
}

// The dual of min w.alpha st M alpha >= b is min (-b).y st M^T y = w, y >= 0
// (free for equality rows). Each separation row is one dual column, so a new
// objective only moves the dual rhs and the previous basis stays valid.
PrlpSolver::PrlpSolver(const Prlp& prlp) : prlp_(prlp) {
  int m = prlp_.dim;
  int n = (int)prlp_.rows.size();
  dual_.n_rows = m;
  dual_.n_cols = n;
  dual_.senses.assign(m, RowSense::EQ);
  dual_.rhs.assign(m, 0.0);
  dual_.rows.assign(m, SparseRow{});
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = prlp_.rows[j].coefs[i];
      if (v != 0.0) dual_.rows[i].push(j, v);
    }
  }
  dual_.objective.resize(n);
  dual_.col_lower.resize(n);
  dual_.col_upper.assign(n, kInf);
  dual_.integer_flags.assign(n, false);
  for (int j = 0; j < n; ++j) {
    dual_.objective[j] = -prlp_.rows[j].rhs;
    dual_.col_lower[j] = prlp_.rows[j].eq ? -kInf : 0.0;
  }
  dual_.name = "separation_dual";
}

PrlpSolver::Result PrlpSolver::solve(const std::vector<double>& w,
                                     double time_limit_s) {
  dual_.rhs = w;
  SolveLimits limits;
  limits.time_limit_s = time_limit_s;
  double t0 = now_s();
  SimplexSolution sol = solve_lp(dual_, warm_ ? &*warm_ : nullptr, limits);
  Result res;
  res.solve_time_s = now_s() - t0;
  res.iterations = sol.iterations;
  switch (sol.status) {
    case SolveStatus::Optimal: {
      warm_ = basis_of(sol);
      res.status = PrlpStatus::Optimal;
      res.value = -sol.objective_value;
      res.alpha.resize(prlp_.dim);
      for (int i = 0; i < prlp_.dim; ++i) res.alpha[i] = -sol.duals[i];
      break;
    }
    case SolveStatus::Unbounded:
      res.status = PrlpStatus::Infeasible;
      break;
    case SolveStatus::Infeasible:
      res.status = PrlpStatus::Unbounded;
      break;
    case SolveStatus::TimeLimit:
      res.status = PrlpStatus::TimeLimit;
      break;
    case SolveStatus::IterationLimit:
    case SolveStatus::NumericalFailure:
      res.status = PrlpStatus::NumericalFailure;
      break;
  }
  return res;
}

void PrlpSolver::make_row_equality(int row_index) {
  prlp_.rows[row_index].eq = true;
  dual_.col_lower[row_index] = -kInf;
  dual_.objective[row_index] = -prlp_.rows[row_index].rhs;
  if (warm_ && warm_->states[row_index] == VarStatus::AtLower)
    warm_->states[row_index] = VarStatus::Free;
}

FeasibilityProbe quick_feasibility(const Prlp& prlp,
                                   const std::vector<double>& c_frame) {
  FeasibilityProbe probe;
  for (int i = 0; i < prlp.n_points; ++i) {
    double v = dot(c_frame, prlp.rows[i].coefs);
    if (probe.p_star_row < 0 || v < probe.c_dot_pstar - 1e-12) {
      probe.p_star_row = i;
      probe.c_dot_pstar = v;
    }
  }
  if (probe.c_dot_pstar <= 1e-9 * prlp.beta_norm) return probe;

  double scale = prlp.beta_norm / probe.c_dot_pstar;
  std::vector<double> cert(c_frame.size());
  for (std::size_t i = 0; i < c_frame.size(); ++i) cert[i] = scale * c_frame[i];
  // Tightness-marked rows demand equality; the scaled objective only meets
  // that at the least-objective points, so bail to a real solve otherwise.
  for (int i = 0; i < prlp.n_points; ++i) {
    if (!prlp.rows[i].eq) continue;
    if (std::abs(dot(cert, prlp.rows[i].coefs) - prlp.beta_norm) >
        1e-7 * std::max(1.0, prlp.beta_norm))
      return probe;
  }
  probe.kind = Feasibility::FeasibleByCertificate;
  probe.certificate = std::move(cert);
  return probe;
}

void FailureLimiter::init(int cut_limit) {
  n_few = 1;
  n_many = ceil_guarded(cut_limit / 4.0);
  n_many_obj = std::max(ceil_guarded(n_few / (1.0 - phi_few)),
                        ceil_guarded(n_many / (1.0 - phi_many)));
}

int FailureLimiter::early_abort_count() const {
  return ceil_guarded(n_few / (1.0 - phi_few));
}

double FailureLimiter::active_threshold(const FailureStats& s) const {
  if (s.objectives_tried >= n_many_obj) return phi_many_obj;
  if (s.cuts_found >= n_many) return phi_many;
  return phi_few;
}

bool FailureLimiter::should_stop(const FailureStats& s, bool last_was_cut) const {
  if (s.objectives_tried <= 0) return false;
  if (s.cuts_found == 0 && s.objectives_tried >= early_abort_count()) return true;
  if (!last_was_cut) return false;
  double rate = s.total_failures() / (double)s.objectives_tried;
  return rate > active_threshold(s);
}

ObjectiveOutcome solve_objective(PrlpSolver& solver, const std::vector<double>& w,
                                 const std::string& label, double time_limit_s,
                                 CutPool& pool, const NonbasicFrame& frame,
                                 const LinearProgram& lp,
                                 const std::string& leaves_tag) {
  ObjectiveOutcome out;
  out.objective_label = label;
  PrlpSolver::Result res = solver.solve(w, time_limit_s);
  out.solve_time_s = res.solve_time_s;
  out.status = res.status;
  switch (res.status) {
    case PrlpStatus::Optimal: {
      out.alpha_frame = res.alpha;
      Cut cand;
      frame.cut_to_structural(res.alpha, solver.prlp().beta_norm, &cand.coeffs,
                              &cand.beta);
      cand.kind = CutKind::Vpc;
      cand.objective_label = label;
      cand.leaves_tag = leaves_tag;
      PostprocessResult pp = postprocess(cand, lp);
      if (!pp.cut) {
        out.failure = FailureCategory::Dynamism;
        break;
      }
      if (pool.add(*pp.cut) == PoolOutcome::Added)
        out.cut = *pp.cut;
      else
        out.failure = FailureCategory::Duplicate;
      break;
    }
    case PrlpStatus::Unbounded:
      out.failure = FailureCategory::Unbounded;
      break;
    case PrlpStatus::TimeLimit:
      out.failure = FailureCategory::TimeLimit;
      break;
    case PrlpStatus::Infeasible:
    case PrlpStatus::NumericalFailure:
      out.numerical = true;
      break;
  }
  return out;
}

Algorithm1Result run_algorithm1(const LinearProgram& lp, const SimplexSolution& root,
                                const Disjunction& d, const NonbasicFrame& frame,
                                const PointRayCollection& coll,
                                const Algorithm1Limits& limits) {
  double t0 = now_s();
  std::vector<double> xbar(root.primal_values.begin(),
                           root.primal_values.begin() + lp.n_cols);
  Algorithm1Result res{CutPool(xbar), FailureStats{}, std::nullopt, 0.0, 0};
  FailureStats& st = res.stats;
  for (const Cut& c : d.one_sided_cuts) res.pool.add(c);

  int k = (int)fractional_integers(lp, xbar, limits.away_tol).size();
  res.cut_limit = std::max(1, (int)std::llround(k * limits.cut_limit_factor));
  FailureLimiter limiter;
  limiter.init(res.cut_limit);

  Prlp prlp = assemble_prlp(coll);
  res.beta_norm = prlp.beta_norm;
  PrlpSolver solver(prlp);
  std::vector<double> c_frame = frame.functional(lp.objective);
  FeasibilityProbe probe = quick_feasibility(prlp, c_frame);
  st.feasibility = probe.kind;
  bool certified = probe.kind == Feasibility::FeasibleByCertificate;
  if (certified) {
    Cut cert;
    frame.cut_to_structural(probe.certificate, prlp.beta_norm, &cert.coeffs,
                            &cert.beta);
    cert.kind = CutKind::Vpc;
    cert.objective_label = "certificate";
    cert.leaves_tag = d.source;
    res.certificate_cut = cert;
  }

  auto remaining = [&] { return limits.gen_time_limit_s - (now_s() - t0); };
  std::vector<double> last_alpha;

  // Returns false when the round is over; sets the stop reason.
  auto record = [&](const ObjectiveOutcome& out) {
    if (out.numerical) {
      st.stop_reason = "numerical failure";
      return false;
    }
    ++st.objectives_tried;
    bool was_cut = out.cut.has_value();
    if (was_cut) {
      ++st.cuts_found;
    } else {
      switch (*out.failure) {
        case FailureCategory::Duplicate: ++st.fail_duplicate; break;
        case FailureCategory::Unbounded: ++st.fail_unbounded; break;
        case FailureCategory::TimeLimit: ++st.fail_time; break;
        case FailureCategory::Dynamism: ++st.fail_dynamism; break;
      }
    }
    if (!out.alpha_frame.empty()) last_alpha = out.alpha_frame;
    if (st.cuts_found >= res.cut_limit) {
      st.stop_reason = "cut limit";
      return false;
    }
    if (limiter.should_stop(st, was_cut)) {
      st.stop_reason = "failure limit";
      return false;
    }
    if (remaining() <= 0.0) {
      st.stop_reason = "time limit";
      return false;
    }
    return true;
  };

  std::vector<double> ones(prlp.dim, 1.0);
  double tl = std::min(certified ? limits.obj_time_limit_s : limits.feas_time_limit_s,
                       std::max(remaining(), 0.01));
  ObjectiveOutcome first = solve_objective(solver, ones, "all_ones", tl, res.pool,
                                           frame, lp, d.source);
  bool go;
  if (!certified && (first.status == PrlpStatus::Infeasible ||
                     first.status == PrlpStatus::TimeLimit)) {
    st.feasibility = Feasibility::InfeasibleLikely;
    st.stop_reason = first.status == PrlpStatus::Infeasible
                         ? "abandoned: separation rows infeasible"
                         : "abandoned: feasibility solve hit the time limit";
    go = false;
  } else {
    go = record(first);
  }

  if (go) {
    std::vector<Cut> gmics = generate_gmics(lp, root, limits.away_tol);
    if (gmics.empty()) {
      st.log.push_back("post_gmic skipped: no rounding cuts at the vertex");
    } else {
      LinearProgram scratch = lp;
      for (const Cut& g : gmics) {
        SparseRow row;
        for (int j = 0; j < lp.n_cols; ++j)
          if (g.coeffs[j] != 0.0) row.push(j, g.coeffs[j]);
        scratch.rows.push_back(std::move(row));
        scratch.senses.push_back(RowSense::GE);
        scratch.rhs.push_back(g.beta);
        if (!scratch.row_names.empty())
          scratch.row_names.push_back("gmic" + std::to_string(scratch.n_rows));
        ++scratch.n_rows;
      }
      SolveLimits sl;
      sl.time_limit_s = std::max(std::min(remaining(), 60.0), 0.01);
      SimplexSolution shifted = solve_lp(scratch, nullptr, sl);
      if (shifted.status == SolveStatus::Optimal &&
          shifted.objective_value > root.objective_value + 1e-9) {
        std::vector<double> x2(shifted.primal_values.begin(),
                               shifted.primal_values.begin() + lp.n_cols);
        std::vector<double> w2 = frame.forward(x2);
        ObjectiveOutcome out =
            solve_objective(solver, w2, "post_gmic",
                            std::min(limits.obj_time_limit_s, std::max(remaining(), 0.01)),
                            res.pool, frame, lp, d.source);
        go = record(out);
      } else if (shifted.status == SolveStatus::Optimal) {
        st.log.push_back("post_gmic skipped: rounding cuts leave the vertex value");
      } else {
        st.log.push_back("post_gmic skipped: re-solve failed");
      }
    }
  }

  if (go) {
    ObjectiveOutcome out = solve_objective(
        solver, prlp.rows[probe.p_star_row].coefs, "p_star",
        std::min(limits.obj_time_limit_s, std::max(remaining(), 0.01)), res.pool,
        frame, lp, d.source);
    go = record(out);
  }

  solver.make_row_equality(probe.p_star_row);

  if (go) {
    const std::vector<double>& base =
        !last_alpha.empty() ? last_alpha : probe.certificate;
    std::vector<int> order;
    for (int i = 0; i < (int)prlp.rows.size(); ++i) {
      if (i == probe.p_star_row || prlp.rows[i].eq) continue;
      if (!base.empty() &&
          dot(base, prlp.rows[i].coefs) <= prlp.rows[i].rhs + 1e-7)
        continue;
      order.push_back(i);
    }
    double cn = norm2(c_frame);
    auto cosine = [&](int i) {
      double vn = norm2(prlp.rows[i].coefs);
      if (vn == 0.0 || cn == 0.0) return 0.0;
      return dot(prlp.rows[i].coefs, c_frame) / (vn * cn);
    };
    std::vector<double> cos_of(prlp.rows.size(), 0.0);
    for (int i : order) cos_of[i] = cosine(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (cos_of[a] != cos_of[b]) return cos_of[a] < cos_of[b];
      if (prlp.rows[a].is_point != prlp.rows[b].is_point)
        return prlp.rows[a].is_point;
      if (prlp.rows[a].term_id != prlp.rows[b].term_id)
        return prlp.rows[a].term_id < prlp.rows[b].term_id;
      return a < b;
    });

    std::vector<char> removed(prlp.rows.size(), 0);
    int loop_cap = 2 * res.cut_limit;
    for (int idx : order) {
      if (!go) break;
      if (removed[idx]) continue;
      if (st.loop_objectives >= loop_cap) {
        st.stop_reason = "loop objective limit";
        go = false;
        break;
      }
      if (remaining() <= 0.0) {
        st.stop_reason = "time limit";
        go = false;
        break;
      }
      const PrlpRow& r = prlp.rows[idx];
      std::string label = (r.is_point ? "tight_point:" : "tight_ray:") +
                          std::to_string(r.entry_index);
      ObjectiveOutcome out = solve_objective(
          solver, r.coefs, label,
          std::min(limits.obj_time_limit_s, std::max(remaining(), 0.01)), res.pool,
          frame, lp, d.source);
      ++st.loop_objectives;
      removed[idx] = 1;
      go = record(out);
      if (out.cut) {
        for (int j : order) {
          if (removed[j]) continue;
          double act = dot(out.alpha_frame, prlp.rows[j].coefs);
          if (std::abs(act - prlp.rows[j].rhs) <= 1e-7) removed[j] = 1;
        }
      }
    }
  }

  if (st.stop_reason.empty())
    st.stop_reason = "objectives exhausted";
  return res;
}

}  // namespace vpc
