#include "vpc/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include <Eigen/Dense>

#include "vpc/cutgen.hpp"
#include "vpc/prlp.hpp"
#include "vpc/simplex.hpp"

namespace vpc {

namespace {

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

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

const char* status_text(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::IterationLimit: return "iteration limit";
    case SolveStatus::TimeLimit: return "time limit";
    case SolveStatus::NumericalFailure: return "numerical failure";
  }
  return "unknown";
}

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void append_note(std::string* notes, const std::string& piece) {
  if (piece.empty()) return;
  if (!notes->empty()) *notes += "; ";
  *notes += piece;
}

// Keeps every gap inside [0, 100 + 1e-6]; excursions past the tolerance are
// recorded, never swallowed.
std::optional<double> clamp_gap(std::optional<double> g, const char* tag,
                                std::string* notes) {
  if (!g) return g;
  double v = *g;
  if (v < 0.0) {
    if (v < -1e-6)
      append_note(notes, std::string(tag) + " clamped from " + fmt_g(v));
    v = 0.0;
  } else if (v > 100.0 + 1e-6) {
    append_note(notes, std::string(tag) + " clamped from " + fmt_g(v));
    v = 100.0;
  }
  return v;
}

std::optional<double> opt_max(const std::optional<double>& a,
                              const std::optional<double>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}

std::vector<double> structural_part(const LinearProgram& lp,
                                    const SimplexSolution& s) {
  return std::vector<double>(s.primal_values.begin(),
                             s.primal_values.begin() + lp.n_cols);
}

struct PostSolve {
  bool ok = false;
  double value = 0.0;
  std::vector<double> x;
  std::string issue;
};

PostSolve resolve_with(const LinearProgram& lp, const std::vector<Cut>* a,
                       const std::vector<Cut>* b) {
  LinearProgram ext = lp;
  if (a) ext = with_cut_rows(ext, *a);
  if (b) ext = with_cut_rows(ext, *b);
  SimplexSolution s = solve_lp(ext);
  PostSolve out;
  if (s.status == SolveStatus::Optimal) {
    out.ok = true;
    out.value = s.objective_value;
    out.x = structural_part(lp, s);
  } else {
    out.issue = std::string("post-cut LP ") + status_text(s.status);
  }
  return out;
}

// One generation pass over a single disjunction (or, in rounds mode, the
// union of both rounds).
struct DisjRun {
  std::string label;
  bool ok = false;
  std::string note;
  std::vector<Cut> cuts;
  FailureStats stats;
  double db = kInf;
  bool have_db = false;
  int n_vpc = 0;
  int n_onesided = 0;
  double gen_time_s = 0.0;
};

void add_stats(FailureStats* a, const FailureStats& b) {
  a->objectives_tried += b.objectives_tried;
  a->cuts_found += b.cuts_found;
  a->fail_duplicate += b.fail_duplicate;
  a->fail_unbounded += b.fail_unbounded;
  a->fail_time += b.fail_time;
  a->fail_dynamism += b.fail_dynamism;
  a->loop_objectives += b.loop_objectives;
  a->log.insert(a->log.end(), b.log.begin(), b.log.end());
}

// k-subsets of {0..n-1} in lexicographic order.
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

struct LinCon {
  std::vector<double> a;
  double b = 0.0;
  bool eq = false;
};

std::vector<LinCon> canonical_constraints(const LinearProgram& lp) {
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

// Every vertex of the (continuous) polyhedron, by walking all potentially
// basic constraint subsets.
std::vector<std::vector<double>> polytope_vertices(const LinearProgram& lp,
                                                   double max_bases) {
  int n = lp.n_cols;
  std::vector<LinCon> cons = canonical_constraints(lp);
  std::vector<int> mand, ineq;
  for (std::size_t i = 0; i < cons.size(); ++i)
    (cons[i].eq ? mand : ineq).push_back((int)i);
  std::vector<std::vector<double>> verts;
  int need = n - (int)mand.size();
  if (need < 0) return verts;
  if (binomial((int)ineq.size(), need) > max_bases)
    throw TooLarge("vertex enumeration too large for facet diagnostics");

  Combinations comb((int)ineq.size(), need);
  while (!comb.done) {
    std::vector<int> chosen = mand;
    for (int k : comb.idx) chosen.push_back(ineq[k]);
    comb.advance();
    Eigen::MatrixXd M(n, n);
    Eigen::VectorXd rhs(n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) M(r, c) = cons[chosen[r]].a[c];
      rhs(r) = cons[chosen[r]].b;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (!lu.isInvertible()) continue;
    Eigen::VectorXd xe = lu.solve(rhs);
    std::vector<double> x(n);
    for (int c = 0; c < n; ++c) x[c] = xe(c);
    bool feas = true;
    for (const LinCon& con : cons) {
      double act = dot(con.a, x);
      double tol = 1e-7 * (1.0 + std::abs(con.b));
      if (con.eq ? std::abs(act - con.b) > tol : act > con.b + tol) {
        feas = false;
        break;
      }
    }
    if (!feas) continue;
    bool dup = false;
    for (const std::vector<double>& v : verts)
      if (max_diff(v, x) <= 1e-7) {
        dup = true;
        break;
      }
    if (!dup) verts.push_back(std::move(x));
  }
  return verts;
}

int affine_rank(const std::vector<std::vector<double>>& pts) {
  if (pts.empty()) return 0;
  if (pts.size() == 1) return 1;
  int n = (int)pts[0].size();
  Eigen::MatrixXd M((int)pts.size() - 1, n);
  for (std::size_t i = 1; i < pts.size(); ++i)
    for (int c = 0; c < n; ++c) M((int)i - 1, c) = pts[i][c] - pts[0][c];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  lu.setThreshold(1e-7);
  return (int)lu.rank() + 1;
}

std::optional<double> pct_of(int active, int total) {
  if (total == 0) return std::nullopt;
  return 100.0 * active / total;
}

}  // namespace

std::optional<double> gap_closed(double lp_value, double ip_value,
                                 double post_cut_value) {
  if (ip_value <= lp_value + 1e-9) return std::nullopt;
  return 100.0 * (post_cut_value - lp_value) / (ip_value - lp_value);
}

std::optional<double> ip_by_enumeration(const LinearProgram& lp,
                                        long long max_assignments) {
  BruteforceOracle oracle(lp, max_assignments);
  return oracle.minimize(lp.objective);
}

LinearProgram with_cut_rows(const LinearProgram& lp,
                            const std::vector<Cut>& cuts) {
  LinearProgram out = lp;
  bool named = !out.row_names.empty();
  for (const Cut& c : cuts) {
    SparseRow row;
    for (int j = 0; j < out.n_cols; ++j)
      if (c.coeffs[j] != 0.0) row.push(j, c.coeffs[j]);
    out.rows.push_back(std::move(row));
    out.senses.push_back(RowSense::GE);
    out.rhs.push_back(c.beta);
    if (named)
      out.row_names.push_back(c.objective_label.empty() ? "cut"
                                                        : c.objective_label);
    ++out.n_rows;
  }
  return out;
}

std::optional<double> ActiveCutStats::gmic_pct() const {
  return pct_of(gmic_active, gmic_total);
}
std::optional<double> ActiveCutStats::vpc_pct() const {
  return pct_of(vpc_active, vpc_total);
}
std::optional<double> ActiveCutStats::onesided_pct() const {
  return pct_of(onesided_active, onesided_total);
}

ActiveCutStats active_cut_stats(const std::vector<Cut>& cuts,
                                const std::vector<double>& x, double tol) {
  ActiveCutStats st;
  for (const Cut& c : cuts) {
    bool active = std::abs(c.activity(x) - c.beta) <= tol * (1.0 + std::abs(c.beta));
    switch (c.kind) {
      case CutKind::Gmic:
        ++st.gmic_total;
        st.gmic_active += active;
        break;
      case CutKind::Vpc:
        ++st.vpc_total;
        st.vpc_active += active;
        break;
      case CutKind::OneSided:
        ++st.onesided_total;
        st.onesided_active += active;
        break;
    }
  }
  return st;
}

FacetReport facet_diagnostics(const LinearProgram& lp, const Disjunction& d,
                              const NonbasicFrame& frame,
                              const PointRayCollection& coll,
                              const std::vector<Cut>& cuts, double max_bases) {
  int n = lp.n_cols;
  std::vector<std::vector<double>> hull;
  for (const Term& t : d.terms) {
    if (t.pruned == Pruned::Infeasible) continue;
    for (std::vector<double>& v : polytope_vertices(term_lp(lp, t), max_bases)) {
      bool dup = false;
      for (const std::vector<double>& h : hull)
        if (max_diff(h, v) <= 1e-7) {
          dup = true;
          break;
        }
      if (!dup) hull.push_back(std::move(v));
    }
  }

  FacetReport rep;
  rep.hull_vertices = (int)hull.size();
  rep.hull_affine_rank = affine_rank(hull);

  for (const Cut& cut : cuts) {
    CutFaceDiagnostic diag;
    diag.objective_label = cut.objective_label;
    double nrm = max_abs(cut.coeffs);
    if (nrm <= 0.0) {
      rep.cuts.push_back(std::move(diag));
      continue;
    }
    std::vector<double> a(cut.coeffs);
    for (double& v : a) v /= nrm;
    double b = cut.beta / nrm;

    std::vector<std::vector<double>> tight;
    for (const std::vector<double>& v : hull)
      if (std::abs(dot(a, v) - b) <= 1e-7 * (1.0 + std::abs(b)))
        tight.push_back(v);
    diag.tight_points = affine_rank(tight);
    diag.facet = diag.tight_points == n;

    double beta_f = 0.0;
    std::vector<double> af = frame.cut_to_frame(a, b, &beta_f);
    double fn = max_abs(af);
    if (fn > 0.0) {
      for (double& v : af) v /= fn;
      beta_f /= fn;
      std::vector<int> tight_terms;
      for (const PointEntry& p : coll.points)
        if (std::abs(dot(af, p.frame) - beta_f) <= 1e-7 * (1.0 + std::abs(beta_f)))
          tight_terms.push_back(p.term_id);
      for (const RayEntry& r : coll.rays) {
        if (std::abs(dot(af, r.frame)) > 1e-7) continue;
        bool owned_tight = false;
        for (int owner : r.owners)
          if (std::find(tight_terms.begin(), tight_terms.end(), owner) !=
              tight_terms.end()) {
            owned_tight = true;
            break;
          }
        if (!owned_tight) ++diag.stray_rays;
      }
      diag.standard_basis = !tight_terms.empty() && diag.stray_rays == 0;
    }
    if (diag.standard_basis && !diag.facet) rep.implication_holds = false;
    rep.cuts.push_back(std::move(diag));
  }
  return rep;
}

namespace {

// Everything shared by every row of one run_instance call.
struct RowContext {
  const LinearProgram* lp = nullptr;
  double lp_value = 0.0;
  std::optional<double> ip;
  std::string gap_na;
  bool want_g = false;
  bool want_v = true;
  const std::vector<Cut>* gmics = nullptr;
  std::optional<double> gap_g;
  std::string g_issue;
  PostSolve pg;
};

ReportRow make_row(const ReportRow& base, const RowContext& ctx,
                   const DisjRun& run) {
  ReportRow row = base;
  row.leaves = run.label;
  row.num_gmics = ctx.want_g ? (int)ctx.gmics->size() : 0;
  row.num_vpcs = run.n_vpc;
  row.num_onesided = run.n_onesided;
  row.fail_duplicate = run.stats.fail_duplicate;
  row.fail_unbounded = run.stats.fail_unbounded;
  row.fail_time = run.stats.fail_time;
  row.fail_dynamism = run.stats.fail_dynamism;
  row.objectives_tried = run.stats.objectives_tried;
  if (run.stats.objectives_tried > 0)
    row.pct_fail =
        100.0 * run.stats.total_failures() / run.stats.objectives_tried;
  if (run.stats.cuts_found > 0)
    row.objs_per_cut =
        (double)run.stats.objectives_tried / run.stats.cuts_found;

  std::string notes = run.note;
  append_note(&notes, ctx.gap_na);
  append_note(&notes, ctx.g_issue);
  if (run.have_db) {
    row.db_value = run.db;
    if (ctx.ip)
      row.db_gap =
          clamp_gap(gap_closed(ctx.lp_value, *ctx.ip, run.db), "DB_gap", &notes);
  }
  if (ctx.want_g) row.gap_gmic = ctx.gap_g;

  PostSolve pv;
  if (ctx.want_v) {
    pv = resolve_with(*ctx.lp, &run.cuts, nullptr);
    if (pv.ok) {
      if (ctx.ip)
        row.gap_vpc = clamp_gap(gap_closed(ctx.lp_value, *ctx.ip, pv.value),
                                "gap_V", &notes);
    } else {
      append_note(&notes, "disjunctive apply: " + pv.issue);
    }
  }

  PostSolve pvg;
  if (ctx.want_g && ctx.want_v) {
    pvg = resolve_with(*ctx.lp, &run.cuts, ctx.gmics);
    if (pvg.ok) {
      if (ctx.ip)
        row.gap_vpc_gmic = clamp_gap(gap_closed(ctx.lp_value, *ctx.ip, pvg.value),
                                     "gap_VG", &notes);
    } else {
      append_note(&notes, "joint apply: " + pvg.issue);
    }
    if (row.gap_gmic && row.gap_vpc) {
      row.gap_max_gv = std::max(*row.gap_gmic, *row.gap_vpc);
      if (*row.gap_vpc > *row.gap_gmic + 1e-3) append_note(&notes, "win:V");
    }
  }

  if (ctx.want_g && ctx.want_v && pvg.ok) {
    std::vector<Cut> all = run.cuts;
    all.insert(all.end(), ctx.gmics->begin(), ctx.gmics->end());
    ActiveCutStats st = active_cut_stats(all, pvg.x);
    row.active_gmic_pct = st.gmic_pct();
    row.active_vpc_pct = st.vpc_pct();
    row.active_onesided_pct = st.onesided_pct();
  } else if (ctx.want_v && pv.ok) {
    ActiveCutStats st = active_cut_stats(run.cuts, pv.x);
    row.active_vpc_pct = st.vpc_pct();
    row.active_onesided_pct = st.onesided_pct();
  } else if (!ctx.want_v && ctx.pg.ok) {
    ActiveCutStats st = active_cut_stats(*ctx.gmics, ctx.pg.x);
    row.active_gmic_pct = st.gmic_pct();
  }

  row.note = notes;
  row.gen_time_s = run.gen_time_s;
  if (run.stats.objectives_tried > 0)
    row.sec_per_obj = run.gen_time_s / run.stats.objectives_tried;
  if (run.stats.cuts_found > 0)
    row.sec_per_cut = run.gen_time_s / run.stats.cuts_found;
  return row;
}

}  // namespace

EvalResult run_instance(const LinearProgram& lp, const EvalConfig& cfg) {
  static const std::vector<std::string> kModes = {"gmic",   "vpc",     "both",
                                                  "splits", "crosses", "rounds"};
  if (std::find(kModes.begin(), kModes.end(), cfg.mode) == kModes.end())
    throw std::invalid_argument("unknown mode: " + cfg.mode);

  EvalResult res;
  ReportRow base;
  base.instance = !cfg.instance_name.empty() ? cfg.instance_name
                  : !lp.name.empty()         ? lp.name
                                             : "instance";
  base.mode = cfg.mode;
  base.seed = cfg.seed;
  base.int_default_bounds = cfg.int_default_unit_bounds ? "0-1" : "0-inf";

  double t_start = now_s();
  SimplexSolution root = solve_lp(lp);
  if (root.status != SolveStatus::Optimal) {
    ReportRow row = base;
    row.leaves = "-";
    row.note = std::string("root LP ") + status_text(root.status);
    if (root.status == SolveStatus::NumericalFailure)
      res.numerical_failure = true;
    row.gen_time_s = now_s() - t_start;
    res.rows.push_back(std::move(row));
    return res;
  }
  double lp_value = root.objective_value;
  base.lp_value = lp_value;

  std::optional<double> ip = cfg.ip_value;
  if (!ip) {
    try {
      ip = ip_by_enumeration(lp, cfg.ip_enum_limit);
      if (!ip)
        res.log.push_back("integer optimum: none within bounds");
    } catch (const EnumerationLimit& e) {
      res.log.push_back(std::string("integer optimum: enumeration skipped: ") +
                        e.what());
    }
  }
  base.ip_value = ip;

  RowContext ctx;
  ctx.lp = &lp;
  ctx.lp_value = lp_value;
  ctx.ip = ip;
  if (!ip)
    ctx.gap_na = "gaps n/a: integer optimum unknown";
  else if (*ip <= lp_value + 1e-9)
    ctx.gap_na = "gaps n/a: no integrality gap";
  ctx.want_g = cfg.mode != "vpc";

  std::vector<Cut> gmics;
  if (ctx.want_g) gmics = generate_gmics(lp, root);
  ctx.gmics = &gmics;
  if (ctx.want_g) {
    ctx.pg = resolve_with(lp, &gmics, nullptr);
    if (ctx.pg.ok) {
      if (ip)
        ctx.gap_g = clamp_gap(gap_closed(lp_value, *ip, ctx.pg.value), "gap_G",
                              &ctx.g_issue);
    } else {
      ctx.g_issue = "rounding apply: " + ctx.pg.issue;
    }
    for (const Cut& c : gmics)
      res.cut_records.push_back({base.instance, cfg.mode, "root", c});
  }

  if (cfg.mode == "gmic") {
    ctx.want_v = false;
    DisjRun none;
    none.label = "-";
    none.gen_time_s = now_s() - t_start;
    res.rows.push_back(make_row(base, ctx, none));
    return res;
  }

  std::vector<double> xbar = structural_part(lp, root);
  std::vector<int> frac = fractional_integers(lp, xbar);
  NonbasicFrame frame;
  std::string stuck;
  if (frac.empty())
    stuck = "vertex already integral";
  else {
    try {
      frame = make_frame(lp, root);
    } catch (const std::exception& e) {
      stuck = std::string("frame unavailable: ") + e.what();
    }
  }
  if (cfg.mode == "crosses" && stuck.empty() && frac.size() < 2)
    stuck = "crosses need two fractional variables";
  if (!stuck.empty()) {
    DisjRun none;
    none.label = "-";
    none.note = stuck;
    none.gen_time_s = now_s() - t_start;
    res.rows.push_back(make_row(base, ctx, none));
    return res;
  }

  Algorithm1Limits lims;
  lims.cut_limit_factor = cfg.cut_limit_factor;
  lims.gen_time_limit_s = cfg.gen_time_limit_s;
  lims.obj_time_limit_s = cfg.prlp_obj_limit_s;
  lims.feas_time_limit_s = cfg.prlp_feas_limit_s;

  struct Job {
    std::string label;
    std::function<Disjunction(double)> build;
  };
  std::vector<Job> jobs;
  if (cfg.mode == "both" || cfg.mode == "vpc" || cfg.mode == "rounds") {
    for (int l : cfg.leaves) {
      if (l < 2) {
        res.log.push_back("leaves " + std::to_string(l) +
                          " skipped: need at least two");
        continue;
      }
      jobs.push_back({std::to_string(l), [&lp, &root, l](double budget) {
                        TreeConfig tc;
                        tc.max_leaves = l;
                        tc.time_limit_s = budget;
                        return build_partial_tree(lp, root, tc);
                      }});
    }
  } else if (cfg.mode == "splits") {
    for (int j : frac)
      jobs.push_back({"split:" + std::to_string(j), [&lp, &root, j](double) {
                        return elementary_split(lp, root, j);
                      }});
  } else {
    for (std::size_t a = 0; a < frac.size(); ++a)
      for (std::size_t b = a + 1; b < frac.size(); ++b) {
        int ca = frac[a], cb = frac[b];
        jobs.push_back({"cross:" + std::to_string(ca) + "," + std::to_string(cb),
                        [&lp, &root, ca, cb](double) {
                          return cross_disjunction(lp, root, ca, cb);
                        }});
      }
  }

  bool rounds = cfg.mode == "rounds";
  double budget = rounds && cfg.gen_time_limit_s == 900.0
                      ? 3600.0
                      : cfg.gen_time_limit_s;
  double t_mode = now_s();
  auto remaining = [&]() {
    return rounds ? std::max(budget - (now_s() - t_mode), 0.01) : budget;
  };

  std::vector<DisjRun> runs;
  for (const Job& job : jobs) {
    DisjRun run;
    run.label = job.label;
    double t0 = now_s();
    try {
      Disjunction d = job.build(remaining());
      if (d.p_star_index < 0) {
        run.note = "no feasible disjunctive term";
      } else {
        run.db = disjunctive_lower_bound(d);
        run.have_db = true;
        CutPool pall(xbar);
        Algorithm1Limits jl = lims;
        if (rounds) jl.cut_limit_factor = 2.0 * cfg.cut_limit_factor;
        jl.gen_time_limit_s = std::max(remaining() - (now_s() - t0), 0.01);
        PointRayCollection coll = build_simple_collection(lp, d, frame);
        Algorithm1Result r1 = run_algorithm1(lp, root, d, frame, coll, jl);
        for (const Cut& c : r1.pool.cuts()) pall.add(c);
        run.stats = r1.stats;
        run.note = std::string(feasibility_name(r1.stats.feasibility)) + "; " +
                   r1.stats.stop_reason;
        if (rounds) {
          run.note = "round 1: " + run.note;
          std::string skip;
          if (r1.pool.cuts().empty()) {
            skip = "no cuts to stack";
          } else {
            LinearProgram lp2 = with_cut_rows(lp, r1.pool.cuts());
            SimplexSolution root2 = solve_lp(lp2);
            if (root2.status != SolveStatus::Optimal) {
              skip = std::string("re-solve ") + status_text(root2.status);
            } else if (fractional_integers(lp2, structural_part(lp2, root2))
                           .empty()) {
              skip = "vertex integral";
            } else {
              try {
                NonbasicFrame frame2 = make_frame(lp2, root2);
                TreeConfig tc2;
                tc2.max_leaves = std::stoi(job.label);
                tc2.time_limit_s = remaining();
                Disjunction d2 = build_partial_tree(lp2, root2, tc2);
                if (d2.p_star_index < 0) {
                  skip = "no feasible disjunctive term";
                } else {
                  PointRayCollection coll2 =
                      build_simple_collection(lp2, d2, frame2);
                  Algorithm1Limits jl2 = jl;
                  jl2.gen_time_limit_s = remaining();
                  Algorithm1Result r2 =
                      run_algorithm1(lp2, root2, d2, frame2, coll2, jl2);
                  for (const Cut& c : r2.pool.cuts()) pall.add(c);
                  add_stats(&run.stats, r2.stats);
                  if (std::isfinite(d2.best_term_value))
                    run.db = std::max(run.db, disjunctive_lower_bound(d2));
                  run.note += " | round 2: " +
                              std::string(feasibility_name(r2.stats.feasibility)) +
                              "; " + r2.stats.stop_reason;
                }
              } catch (const std::exception& e) {
                skip = e.what();
              }
            }
          }
          if (!skip.empty()) run.note += " | round 2 skipped: " + skip;
        }
        run.cuts = pall.cuts();
        run.n_vpc = pall.count(CutKind::Vpc);
        run.n_onesided = pall.count(CutKind::OneSided);
        run.ok = true;
      }
    } catch (const NumericalError& e) {
      run.note = std::string("numerical: ") + e.what();
    } catch (const EmptyCollection& e) {
      run.note = std::string("separation input empty: ") + e.what();
    } catch (const EnumerationLimit& e) {
      run.note = std::string("enumeration: ") + e.what();
    } catch (const std::exception& e) {
      run.note = std::string("error: ") + e.what();
    }
    run.gen_time_s = now_s() - t0;
    runs.push_back(std::move(run));
  }

  std::vector<ReportRow> size_rows;
  for (const DisjRun& run : runs) {
    size_rows.push_back(make_row(base, ctx, run));
    for (const Cut& c : run.cuts)
      res.cut_records.push_back({base.instance, cfg.mode, run.label, c});
  }
  res.rows.insert(res.rows.end(), size_rows.begin(), size_rows.end());

  if (runs.size() >= 2) {
    std::size_t pick = 0;
    double pick_key = -kInf;
    for (std::size_t i = 0; i < size_rows.size(); ++i) {
      const ReportRow& r = size_rows[i];
      double key = r.gap_vpc_gmic ? *r.gap_vpc_gmic
                   : r.gap_vpc    ? *r.gap_vpc
                   : r.db_gap     ? *r.db_gap
                                  : -kInf;
      if (key > pick_key) {
        pick_key = key;
        pick = i;
      }
    }
    ReportRow best = size_rows[pick];
    best.leaves = "best";
    for (const ReportRow& r : size_rows) {
      best.gap_gmic = opt_max(best.gap_gmic, r.gap_gmic);
      best.gap_vpc = opt_max(best.gap_vpc, r.gap_vpc);
      best.gap_vpc_gmic = opt_max(best.gap_vpc_gmic, r.gap_vpc_gmic);
      best.gap_max_gv = opt_max(best.gap_max_gv, r.gap_max_gv);
      best.db_gap = opt_max(best.db_gap, r.db_gap);
      best.db_value = opt_max(best.db_value, r.db_value);
    }
    best.note = "best of " + runs[pick].label;
    res.rows.push_back(std::move(best));

    DisjRun comb;
    comb.label = "combined";
    CutPool pall(xbar);
    int n_ok = 0;
    for (const DisjRun& run : runs) {
      for (const Cut& c : run.cuts) pall.add(c);
      add_stats(&comb.stats, run.stats);
      comb.gen_time_s += run.gen_time_s;
      if (run.have_db) {
        comb.db = comb.have_db ? std::max(comb.db, run.db) : run.db;
        comb.have_db = true;
      }
      n_ok += run.ok;
    }
    comb.cuts = pall.cuts();
    comb.n_vpc = pall.count(CutKind::Vpc);
    comb.n_onesided = pall.count(CutKind::OneSided);
    comb.ok = n_ok > 0;
    comb.note = "union of " + std::to_string(runs.size()) + " runs";
    res.rows.push_back(make_row(base, ctx, comb));
  }
  return res;
}

}  // namespace vpc
