#include "vpc/cutgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vpc/frame.hpp"

namespace vpc {

namespace {

void slack_bounds(RowSense sense, double* l, double* u) {
  switch (sense) {
    case RowSense::LE: *l = 0.0, *u = kInf; break;
    case RowSense::GE: *l = -kInf, *u = 0.0; break;
    case RowSense::EQ: *l = 0.0, *u = 0.0; break;
  }
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return ab / std::sqrt(aa * bb);
}

}  // namespace

std::vector<Cut> generate_gmics(const LinearProgram& lp,
                                const SimplexSolution& sol, double away_tol) {
  std::vector<Cut> out;
  int n = lp.n_cols;
  for (int b = 0; b < n; ++b) {
    if (!lp.integer_flags[b]) continue;
    if (std::find(sol.basic_indices.begin(), sol.basic_indices.end(), b) ==
        sol.basic_indices.end())
      continue;
    double xb = sol.primal_values[b];
    double f0 = xb - std::floor(xb);
    if (f0 < away_tol || f0 > 1.0 - away_tol) continue;

    TableauRow tr = tableau_row(lp, sol, b);
    std::vector<double> alpha(n, 0.0);
    double beta = f0;
    bool bad = false;
    for (std::size_t k = 0; k < tr.vars.size() && !bad; ++k) {
      int v = tr.vars[k];
      double coef = tr.coefs[k];
      bool is_struct = v < n;
      double l = 0.0, u = 0.0;
      if (is_struct) {
        l = lp.col_lower[v];
        u = lp.col_upper[v];
      } else {
        slack_bounds(lp.senses[v - n], &l, &u);
      }
      if (l == u) continue;  // pinned nonbasic never moves

      VarStatus st = sol.nonbasic_states[v];
      double abar;
      if (st == VarStatus::AtLower)
        abar = coef;
      else if (st == VarStatus::AtUpper)
        abar = -coef;
      else {
        bad = true;
        break;
      }

      double gamma;
      if (is_struct && lp.integer_flags[v]) {
        double fj = abar - std::floor(abar);
        gamma = std::min(fj, f0 * (1.0 - fj) / (1.0 - f0));
      } else {
        gamma = abar >= 0.0 ? abar : f0 * (-abar) / (1.0 - f0);
      }
      if (gamma == 0.0) continue;

      if (is_struct) {
        if (st == VarStatus::AtLower) {
          alpha[v] += gamma;
          beta += gamma * l;
        } else {
          alpha[v] -= gamma;
          beta -= gamma * u;
        }
      } else {
        int row = v - n;
        double sign = st == VarStatus::AtLower ? -1.0 : 1.0;
        for (std::size_t t = 0; t < lp.rows[row].cols.size(); ++t)
          alpha[lp.rows[row].cols[t]] += sign * gamma * lp.rows[row].vals[t];
        beta += sign * gamma * lp.rhs[row];
      }
    }
    if (bad) continue;

    Cut c;
    c.coeffs = std::move(alpha);
    c.beta = beta;
    c.kind = CutKind::Gmic;
    c.source_col = b;
    c.objective_label = "frac:" + std::to_string(b);
    out.push_back(std::move(c));
  }
  return out;
}

const char* cut_reject_name(CutReject r) {
  switch (r) {
    case CutReject::UnboundedSubstitution: return "unbounded_substitution";
    case CutReject::Dynamism: return "dynamism";
  }
  return "?";
}

PostprocessResult postprocess(Cut candidate, const LinearProgram& lp) {
  for (int j = 0; j < lp.n_cols; ++j) {
    double g = candidate.coeffs[j];
    double a = std::abs(g);
    if (a == 0.0) continue;
    if (a < 1e-7) {
      candidate.coeffs[j] = 0.0;
      continue;
    }
    if (a < 1e-5) {
      double bound = g > 0.0 ? lp.col_upper[j] : lp.col_lower[j];
      if (!std::isfinite(bound))
        return {std::nullopt, CutReject::UnboundedSubstitution};
      candidate.beta -= g * bound;
      candidate.coeffs[j] = 0.0;
    }
  }
  if (candidate.support() == 0 || candidate.dynamism() > 1e8)
    return {std::nullopt, CutReject::Dynamism};
  return {std::move(candidate), std::nullopt};
}

const char* pool_outcome_name(PoolOutcome o) {
  switch (o) {
    case PoolOutcome::Added: return "added";
    case PoolOutcome::Duplicate: return "duplicate";
    case PoolOutcome::Dominated: return "dominated";
    case PoolOutcome::Parallel: return "parallel";
  }
  return "?";
}

PoolOutcome CutPool::add(const Cut& cut) {
  double s = inf_norm(cut.coeffs);
  if (s <= 0.0) {
    log_.push_back("rejected: empty cut");
    return PoolOutcome::Duplicate;
  }
  std::vector<double> cn(cut.coeffs);
  for (double& v : cn) v /= s;
  double cb = cut.beta / s;

  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    if (cuts_[i].kind != cut.kind) continue;
    double es = inf_norm(cuts_[i].coeffs);
    std::vector<double> en(cuts_[i].coeffs);
    for (double& v : en) v /= es;
    double eb = cuts_[i].beta / es;
    if (max_diff(cn, en) > 1e-9) continue;
    if (std::abs(cb - eb) <= 1e-9) {
      log_.push_back("rejected: duplicate of pool cut " + std::to_string(i));
      return PoolOutcome::Duplicate;
    }
    if (cb < eb - 1e-9) {
      log_.push_back("rejected: dominated by pool cut " + std::to_string(i));
      return PoolOutcome::Dominated;
    }
    log_.push_back("evicted pool cut " + std::to_string(i) +
                   ": dominated by stronger candidate");
    cuts_.erase(cuts_.begin() + (long)i);
    --i;
  }

  if (cut.kind == CutKind::Vpc) {
    for (std::size_t i = 0; i < cuts_.size(); ++i) {
      if (cuts_[i].kind != CutKind::Vpc) continue;
      double cosv = cosine(cut.coeffs, cuts_[i].coeffs);
      if (1.0 - cosv >= 1e-3) continue;
      double va = cut.euclidean_violation(xbar_);
      double vb = cuts_[i].euclidean_violation(xbar_);
      bool cand_wins = va > vb + 1e-12 ||
                       (std::abs(va - vb) <= 1e-12 &&
                        cut.support() < cuts_[i].support());
      if (!cand_wins) {
        log_.push_back("rejected: parallel to pool cut " + std::to_string(i));
        return PoolOutcome::Parallel;
      }
      log_.push_back("evicted pool cut " + std::to_string(i) +
                     ": parallel to stronger candidate");
      cuts_.erase(cuts_.begin() + (long)i);
      --i;
    }
  }

  cuts_.push_back(cut);
  return PoolOutcome::Added;
}

int CutPool::count(CutKind k) const {
  int c = 0;
  for (const Cut& cut : cuts_)
    if (cut.kind == k) ++c;
  return c;
}

}  // namespace vpc
