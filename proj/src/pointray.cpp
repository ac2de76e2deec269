#include "vpc/pointray.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Dense>

#include "json.hpp"
#include "vpc/simplex.hpp"

namespace vpc {

namespace {

double max_abs(const std::vector<double>& v) {
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

int single_nonzero(const std::vector<double>& v) {
  int idx = -1;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (std::abs(v[k]) > 1e-12) {
      if (idx >= 0) return -1;
      idx = (int)k;
    }
  }
  return idx;
}

// Canonical inequality a.x <= b; eq rows keep their normal as-is.
struct LinCon {
  std::vector<double> a;
  double b = 0.0;
  bool eq = false;
};

std::vector<LinCon> constraint_list(const LinearProgram& lp) {
  std::vector<LinCon> out;
  for (int i = 0; i < lp.n_rows; ++i) {
    LinCon c;
    c.a.assign(lp.n_cols, 0.0);
    double sign = lp.senses[i] == RowSense::GE ? -1.0 : 1.0;
    for (std::size_t k = 0; k < lp.rows[i].cols.size(); ++k)
      c.a[lp.rows[i].cols[k]] = sign * lp.rows[i].vals[k];
    c.b = sign * lp.rhs[i];
    c.eq = lp.senses[i] == RowSense::EQ;
    out.push_back(std::move(c));
  }
  for (int j = 0; j < lp.n_cols; ++j) {
    double l = lp.col_lower[j], u = lp.col_upper[j];
    if (std::isfinite(l) && l == u) {
      LinCon c;
      c.a.assign(lp.n_cols, 0.0);
      c.a[j] = 1.0;
      c.b = l;
      c.eq = true;
      out.push_back(std::move(c));
      continue;
    }
    if (std::isfinite(u)) {
      LinCon c;
      c.a.assign(lp.n_cols, 0.0);
      c.a[j] = 1.0;
      c.b = u;
      out.push_back(std::move(c));
    }
    if (std::isfinite(l)) {
      LinCon c;
      c.a.assign(lp.n_cols, 0.0);
      c.a[j] = -1.0;
      c.b = -l;
      out.push_back(std::move(c));
    }
  }
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Iterates k-subsets of {0..n-1} in lexicographic order.
struct Combinations {
  int n, k;
  std::vector<int> idx;
  bool done = false;
  Combinations(int n_, int k_) : n(n_), k(k_) {
    if (k > n || k < 0) {
      done = true;
      return;
    }
    idx.resize(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
  }
  bool advance() {
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) {
      done = true;
      return false;
    }
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    return true;
  }
};

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Gaussian elimination with partial pivoting on an augmented d x (d+1)
// system stored row-major. Returns false when singular.
bool solve_square(std::vector<double>& m, int d, std::vector<double>* x) {
  int w = d + 1;
  for (int col = 0; col < d; ++col) {
    int piv = col;
    double best = std::abs(m[col * w + col]);
    for (int r = col + 1; r < d; ++r) {
      double v = std::abs(m[r * w + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < 1e-11) return false;
    if (piv != col)
      for (int c = col; c < w; ++c) std::swap(m[piv * w + c], m[col * w + c]);
    double p = m[col * w + col];
    for (int r = col + 1; r < d; ++r) {
      double f = m[r * w + col] / p;
      if (f == 0.0) continue;
      for (int c = col; c < w; ++c) m[r * w + c] -= f * m[col * w + c];
    }
  }
  x->assign(d, 0.0);
  for (int r = d - 1; r >= 0; --r) {
    double s = m[r * w + d];
    for (int c = r + 1; c < d; ++c) s -= m[r * w + c] * (*x)[c];
    (*x)[r] = s / m[r * w + r];
  }
  return true;
}

void add_point(PointRayCollection* c, PointEntry pe) {
  for (const PointEntry& q : c->points) {
    if (max_diff(q.frame, pe.frame) <= 1e-12) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "point of term %d duplicates term %d",
                    pe.term_id, q.term_id);
      c->dedup_log.push_back(buf);
      return;
    }
  }
  pe.bound_var = single_nonzero(pe.frame);
  c->points.push_back(std::move(pe));
}

void add_ray(PointRayCollection* c, int term_id, int nonbasic_var,
             std::vector<double> frame_dir, std::vector<double> struct_dir) {
  double nrm = max_abs(frame_dir);
  if (nrm <= 1e-12) return;
  for (double& v : frame_dir) v /= nrm;
  for (double& v : struct_dir) v /= nrm;
  for (RayEntry& r : c->rays) {
    if (max_diff(r.frame, frame_dir) <= 1e-12) {
      if (std::find(r.owners.begin(), r.owners.end(), term_id) ==
          r.owners.end())
        r.owners.push_back(term_id);
      char buf[96];
      std::snprintf(buf, sizeof buf, "ray of term %d merged (owner set now %d)",
                    term_id, (int)r.owners.size());
      c->dedup_log.push_back(buf);
      return;
    }
  }
  RayEntry re;
  re.owners = {term_id};
  re.nonbasic_var = nonbasic_var;
  re.frame = std::move(frame_dir);
  re.structural = std::move(struct_dir);
  re.bound_var = single_nonzero(re.frame);
  c->rays.push_back(std::move(re));
}

void fill_bound_rows(PointRayCollection* c) {
  for (std::size_t i = 0; i < c->points.size(); ++i)
    if (c->points[i].bound_var >= 0)
      c->bound_rows.push_back({true, (int)i, c->points[i].bound_var,
                               c->points[i].frame[c->points[i].bound_var]});
  for (std::size_t i = 0; i < c->rays.size(); ++i)
    if (c->rays[i].bound_var >= 0)
      c->bound_rows.push_back({false, (int)i, c->rays[i].bound_var,
                               c->rays[i].frame[c->rays[i].bound_var]});
}

std::vector<double> structural_part(const LinearProgram& lp,
                                    const SimplexSolution& s) {
  return std::vector<double>(s.primal_values.begin(),
                             s.primal_values.begin() + lp.n_cols);
}

}  // namespace

PointRayCollection build_simple_collection(const LinearProgram& lp,
                                           const Disjunction& d,
                                           const NonbasicFrame& frame) {
  PointRayCollection c;
  for (const Term& t : d.terms) {
    if (t.pruned == Pruned::Infeasible) continue;
    std::vector<double> p = structural_part(lp, t.solution);
    PointEntry pe;
    pe.term_id = t.id;
    pe.structural = p;
    pe.frame = frame.forward(p);
    pe.objective = lp.objective_value(p);
    add_point(&c, std::move(pe));

    LinearProgram tl = term_lp(lp, t);
    for (const ConeRay& cr : basis_cone_rays(tl, t.solution))
      add_ray(&c, t.id, cr.nonbasic_var, frame.ray_image(cr.direction),
              cr.direction);
  }
  fill_bound_rows(&c);
  return c;
}

PointRayCollection build_neighbor_collection(const LinearProgram& lp,
                                             const Disjunction& d,
                                             const NonbasicFrame& frame,
                                             int max_edges_per_term) {
  PointRayCollection c;
  int n = lp.n_cols;
  for (const Term& t : d.terms) {
    if (t.pruned == Pruned::Infeasible) continue;
    std::vector<double> p = structural_part(lp, t.solution);
    PointEntry pe;
    pe.term_id = t.id;
    pe.structural = p;
    pe.frame = frame.forward(p);
    pe.objective = lp.objective_value(p);
    pe.optimum_tight = true;
    add_point(&c, std::move(pe));

    LinearProgram tl = term_lp(lp, t);
    std::vector<LinCon> cons = constraint_list(tl);
    std::vector<int> mand, free_tight, loose;
    for (std::size_t i = 0; i < cons.size(); ++i) {
      double act = dot(cons[i].a, p);
      bool tight = std::abs(act - cons[i].b) <= 1e-7 * (1.0 + std::abs(cons[i].b));
      if (cons[i].eq)
        mand.push_back((int)i);
      else if (tight)
        free_tight.push_back((int)i);
      else
        loose.push_back((int)i);
    }
    int need = n - 1 - (int)mand.size();
    if (need < 0 || need > (int)free_tight.size()) continue;
    if (binomial((int)free_tight.size(), need) > (double)max_edges_per_term)
      throw EnumerationLimit("too many tight-set subsets at a term optimum");

    Combinations comb((int)free_tight.size(), need);
    while (!comb.done) {
      std::vector<int> chosen = mand;
      for (int k : comb.idx) chosen.push_back(free_tight[k]);
      comb.advance();

      std::vector<double> dir0(n, 0.0);
      if (n == 1) {
        dir0[0] = 1.0;
      } else {
        Eigen::MatrixXd M((int)chosen.size(), n);
        for (std::size_t r = 0; r < chosen.size(); ++r)
          for (int cidx = 0; cidx < n; ++cidx)
            M((int)r, cidx) = cons[chosen[r]].a[cidx];
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        if (lu.dimensionOfKernel() != 1) continue;
        Eigen::VectorXd kern = lu.kernel().col(0);
        for (int cidx = 0; cidx < n; ++cidx) dir0[cidx] = kern(cidx);
      }
      double nrm = max_abs(dir0);
      if (nrm <= 1e-12) continue;
      for (double& v : dir0) v /= nrm;

      for (double s : {1.0, -1.0}) {
        std::vector<double> dir(n);
        for (int cidx = 0; cidx < n; ++cidx) dir[cidx] = s * dir0[cidx];
        bool ok = true;
        for (int fi : free_tight) {
          if (std::find(chosen.begin(), chosen.end(), fi) != chosen.end())
            continue;
          if (dot(cons[fi].a, dir) > 1e-9) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;

        double tstar = kInf;
        for (int li : loose) {
          double rate = dot(cons[li].a, dir);
          if (rate > 1e-9)
            tstar = std::min(tstar, (cons[li].b - dot(cons[li].a, p)) / rate);
        }
        if (!std::isfinite(tstar)) {
          add_ray(&c, t.id, -1, frame.ray_image(dir), dir);
          continue;
        }
        if (tstar <= 1e-9) continue;
        std::vector<double> q(n);
        for (int cidx = 0; cidx < n; ++cidx) q[cidx] = p[cidx] + tstar * dir[cidx];
        bool dup = false;
        for (const PointEntry& ex : c.points)
          if (max_diff(ex.structural, q) <= 1e-7) {
            dup = true;
            break;
          }
        if (dup) continue;
        PointEntry ne;
        ne.term_id = t.id;
        ne.structural = q;
        ne.frame = frame.forward(q);
        ne.objective = lp.objective_value(q);
        add_point(&c, std::move(ne));
      }
    }
  }
  fill_bound_rows(&c);
  return c;
}

BruteforceOracle::BruteforceOracle(const LinearProgram& lp,
                                   long long max_assignments)
    : n_cols_(lp.n_cols) {
  std::vector<int> ints, cont;
  std::vector<long long> lo, hi;
  double count = 1.0;
  for (int j = 0; j < lp.n_cols; ++j) {
    if (lp.integer_flags[j]) {
      double l = std::ceil(lp.col_lower[j] - 1e-9);
      double u = std::floor(lp.col_upper[j] + 1e-9);
      if (!std::isfinite(l) || !std::isfinite(u))
        throw EnumerationLimit("integer variable with an infinite bound");
      if (l > u) return;  // no integer assignments at all
      ints.push_back(j);
      lo.push_back((long long)l);
      hi.push_back((long long)u);
      count *= (double)(hi.back() - lo.back() + 1);
    } else {
      if (!std::isfinite(lp.col_lower[j]) && !std::isfinite(lp.col_upper[j]))
        throw EnumerationLimit("free continuous variable unsupported");
      cont.push_back(j);
    }
  }
  if (count > (double)max_assignments)
    throw EnumerationLimit("integer assignment enumeration too large");

  int d = (int)cont.size();
  bool maybe_unbounded = false;
  for (int j : cont)
    if (!std::isfinite(lp.col_lower[j]) || !std::isfinite(lp.col_upper[j]))
      maybe_unbounded = true;

  // Row constraints in canonical <= form, split into integer and continuous
  // parts. Continuous bounds enter as extra fiber constraints.
  struct FiberCon {
    std::vector<double> ac;
    std::vector<double> ai;
    double b = 0.0;
    bool eq = false;
  };
  std::vector<FiberCon> fcons;
  for (int i = 0; i < lp.n_rows; ++i) {
    FiberCon fc;
    fc.ac.assign(d, 0.0);
    fc.ai.assign(ints.size(), 0.0);
    double sign = lp.senses[i] == RowSense::GE ? -1.0 : 1.0;
    for (std::size_t k = 0; k < lp.rows[i].cols.size(); ++k) {
      int col = lp.rows[i].cols[k];
      double v = sign * lp.rows[i].vals[k];
      auto ci = std::find(cont.begin(), cont.end(), col);
      if (ci != cont.end())
        fc.ac[ci - cont.begin()] = v;
      else
        fc.ai[std::find(ints.begin(), ints.end(), col) - ints.begin()] = v;
    }
    fc.b = sign * lp.rhs[i];
    fc.eq = lp.senses[i] == RowSense::EQ;
    fcons.push_back(std::move(fc));
  }
  for (int k = 0; k < d; ++k) {
    int j = cont[k];
    if (std::isfinite(lp.col_upper[j])) {
      FiberCon fc;
      fc.ac.assign(d, 0.0);
      fc.ai.assign(ints.size(), 0.0);
      fc.ac[k] = 1.0;
      fc.b = lp.col_upper[j];
      fcons.push_back(std::move(fc));
    }
    if (std::isfinite(lp.col_lower[j])) {
      FiberCon fc;
      fc.ac.assign(d, 0.0);
      fc.ai.assign(ints.size(), 0.0);
      fc.ac[k] = -1.0;
      fc.b = -lp.col_lower[j];
      fcons.push_back(std::move(fc));
    }
  }
  int nc = (int)fcons.size();
  std::vector<int> eq_idx, ineq_idx;
  for (int i = 0; i < nc; ++i)
    (fcons[i].eq ? eq_idx : ineq_idx).push_back(i);

  std::vector<long long> v(ints.size());
  for (std::size_t k = 0; k < ints.size(); ++k) v[k] = lo[k];
  std::vector<double> vd(ints.size());
  std::vector<double> badj(nc);

  bool more = true;
  while (more) {
    for (std::size_t k = 0; k < ints.size(); ++k) vd[k] = (double)v[k];
    for (int i = 0; i < nc; ++i) {
      double shift = 0.0;
      for (std::size_t k = 0; k < ints.size(); ++k)
        shift += fcons[i].ai[k] * vd[k];
      badj[i] = fcons[i].b - shift;
    }

    Fiber fib;
    if (d == 0) {
      bool feas = true;
      for (int i = 0; i < nc; ++i) {
        double tol = 1e-7 * (1.0 + std::abs(badj[i]));
        if (fcons[i].eq ? std::abs(badj[i]) > tol : badj[i] < -tol) {
          feas = false;
          break;
        }
      }
      if (feas) {
        std::vector<double> x(n_cols_, 0.0);
        for (std::size_t k = 0; k < ints.size(); ++k) x[ints[k]] = vd[k];
        fib.vertices.push_back(std::move(x));
      }
    } else {
      int need = d - (int)eq_idx.size();
      if (need >= 0) {
        Combinations comb((int)ineq_idx.size(), need);
        std::vector<double> m((std::size_t)d * (d + 1));
        std::vector<double> xs;
        while (!comb.done) {
          std::vector<int> chosen = eq_idx;
          for (int k : comb.idx) chosen.push_back(ineq_idx[k]);
          comb.advance();
          for (int r = 0; r < d; ++r) {
            for (int cc = 0; cc < d; ++cc)
              m[(std::size_t)r * (d + 1) + cc] = fcons[chosen[r]].ac[cc];
            m[(std::size_t)r * (d + 1) + d] = badj[chosen[r]];
          }
          if (!solve_square(m, d, &xs)) continue;
          bool feas = true;
          for (int i = 0; i < nc && feas; ++i) {
            double act = 0.0;
            for (int cc = 0; cc < d; ++cc) act += fcons[i].ac[cc] * xs[cc];
            double tol = 1e-7 * (1.0 + std::abs(badj[i]));
            if (fcons[i].eq ? std::abs(act - badj[i]) > tol
                            : act > badj[i] + tol)
              feas = false;
          }
          if (!feas) continue;
          std::vector<double> x(n_cols_, 0.0);
          for (std::size_t k = 0; k < ints.size(); ++k) x[ints[k]] = vd[k];
          for (int cc = 0; cc < d; ++cc) x[cont[cc]] = xs[cc];
          fib.vertices.push_back(std::move(x));
        }
      }
      if (!fib.vertices.empty() && maybe_unbounded && d >= 1) {
        // Extreme rays of the recession cone: d-1 tight homogeneous
        // constraints plus every equality row.
        int rneed = d - 1 - (int)eq_idx.size();
        if (rneed >= 0) {
          Combinations comb((int)ineq_idx.size(), rneed);
          while (!comb.done) {
            std::vector<int> chosen = eq_idx;
            for (int k : comb.idx) chosen.push_back(ineq_idx[k]);
            comb.advance();
            std::vector<double> dir(d, 0.0);
            if (d == 1) {
              dir[0] = 1.0;
            } else {
              Eigen::MatrixXd M((int)chosen.size(), d);
              for (std::size_t r = 0; r < chosen.size(); ++r)
                for (int cc = 0; cc < d; ++cc)
                  M((int)r, cc) = fcons[chosen[r]].ac[cc];
              Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
              if (lu.dimensionOfKernel() != 1) continue;
              Eigen::VectorXd kern = lu.kernel().col(0);
              for (int cc = 0; cc < d; ++cc) dir[cc] = kern(cc);
            }
            double nrm = max_abs(dir);
            if (nrm <= 1e-12) continue;
            for (double& x : dir) x /= nrm;
            for (double s : {1.0, -1.0}) {
              bool in_cone = true;
              for (int i = 0; i < nc && in_cone; ++i) {
                double act = 0.0;
                for (int cc = 0; cc < d; ++cc)
                  act += s * fcons[i].ac[cc] * dir[cc];
                if (fcons[i].eq ? std::abs(act) > 1e-9 : act > 1e-9)
                  in_cone = false;
              }
              if (!in_cone) continue;
              std::vector<double> r(n_cols_, 0.0);
              for (int cc = 0; cc < d; ++cc) r[cont[cc]] = s * dir[cc];
              bool dup = false;
              for (const std::vector<double>& ex : fib.rays)
                if (max_diff(ex, r) <= 1e-9) dup = true;
              if (!dup) fib.rays.push_back(std::move(r));
            }
          }
        }
      }
    }
    if (!fib.vertices.empty()) fibers_.push_back(std::move(fib));

    more = false;
    for (int k = (int)v.size() - 1; k >= 0; --k) {
      if (v[k] < hi[k]) {
        ++v[k];
        for (std::size_t k2 = k + 1; k2 < v.size(); ++k2) v[k2] = lo[k2];
        more = true;
        break;
      }
    }
    if (ints.empty()) break;
  }
}

ValidationResult BruteforceOracle::validate(const std::vector<double>& alpha,
                                            double beta, double tol) const {
  ValidationResult res;
  res.value = kInf;
  double margin = beta - tol * (1.0 + std::abs(beta));
  for (const Fiber& f : fibers_) {
    for (const std::vector<double>& r : f.rays) {
      double dv = dot(alpha, r);
      if (dv < -tol) {
        const std::vector<double>& v0 = f.vertices.front();
        double k = (dot(alpha, v0) - margin + 1.0) / (-dv);
        res.valid = false;
        res.witness.resize(n_cols_);
        for (int j = 0; j < n_cols_; ++j) res.witness[j] = v0[j] + k * r[j];
        res.value = dot(alpha, res.witness);
        res.detail = "unbounded direction violates the cut";
        return res;
      }
    }
    for (const std::vector<double>& v : f.vertices) {
      double val = dot(alpha, v);
      if (val < res.value - 1e-12) {
        res.value = val;
        res.witness = v;
      }
    }
  }
  if (res.value < margin) {
    res.valid = false;
    res.detail = "integer-feasible point below the cut";
  } else {
    res.valid = true;
    if (fibers_.empty()) res.detail = "no integer-feasible assignments";
  }
  return res;
}

std::optional<double> BruteforceOracle::minimize(
    const std::vector<double>& c) const {
  double best = kInf;
  for (const Fiber& f : fibers_) {
    for (const std::vector<double>& r : f.rays)
      if (dot(c, r) < -1e-9) return std::nullopt;
    for (const std::vector<double>& v : f.vertices)
      best = std::min(best, dot(c, v));
  }
  if (!std::isfinite(best)) return std::nullopt;
  return best;
}

ValidationResult validate_cut_bruteforce(const Cut& cut,
                                         const LinearProgram& lp, double tol) {
  BruteforceOracle oracle(lp);
  return oracle.validate(cut.coeffs, cut.beta, tol);
}

bool membership_in_pointray_hull(const std::vector<double>& x_frame,
                                 const PointRayCollection& coll, double tol) {
  int n = (int)x_frame.size();
  int np = (int)coll.points.size(), nr = (int)coll.rays.size();
  if (np == 0) return false;
  LinearProgram lp;
  lp.n_cols = np + nr;
  lp.n_rows = n + 1;
  lp.objective.assign(lp.n_cols, 0.0);
  lp.col_lower.assign(lp.n_cols, 0.0);
  lp.col_upper.assign(lp.n_cols, kInf);
  lp.integer_flags.assign(lp.n_cols, false);
  for (int k = 0; k < n; ++k) {
    SparseRow row;
    for (int i = 0; i < np; ++i)
      if (std::abs(coll.points[i].frame[k]) > 0.0)
        row.push(i, coll.points[i].frame[k]);
    for (int j = 0; j < nr; ++j)
      if (std::abs(coll.rays[j].frame[k]) > 0.0)
        row.push(np + j, coll.rays[j].frame[k]);
    lp.rows.push_back(std::move(row));
    lp.senses.push_back(RowSense::EQ);
    lp.rhs.push_back(x_frame[k]);
  }
  SparseRow conv;
  for (int i = 0; i < np; ++i) conv.push(i, 1.0);
  lp.rows.push_back(std::move(conv));
  lp.senses.push_back(RowSense::EQ);
  lp.rhs.push_back(1.0);

  SimplexTolerances tols;
  tols.feasibility = tol;
  SimplexSolution s = solve_lp(lp, nullptr, SolveLimits{}, tols);
  return s.status == SolveStatus::Optimal;
}

std::string to_debug_json(const PointRayCollection& coll) {
  nlohmann::json j;
  j["points"] = nlohmann::json::array();
  for (const PointEntry& p : coll.points)
    j["points"].push_back({{"term", p.term_id},
                           {"frame", p.frame},
                           {"structural", p.structural},
                           {"objective", p.objective},
                           {"optimum_tight", p.optimum_tight},
                           {"bound_var", p.bound_var}});
  j["rays"] = nlohmann::json::array();
  for (const RayEntry& r : coll.rays)
    j["rays"].push_back({{"owners", r.owners},
                         {"nonbasic_var", r.nonbasic_var},
                         {"frame", r.frame},
                         {"structural", r.structural},
                         {"bound_var", r.bound_var}});
  j["bound_rows"] = coll.bound_rows.size();
  j["dedup_log"] = coll.dedup_log;
  return j.dump(2);
}

}  // namespace vpc
