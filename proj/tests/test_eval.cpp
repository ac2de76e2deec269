#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "support/fixtures.hpp"
#include "vpc/cutgen.hpp"
#include "vpc/disjunction.hpp"
#include "vpc/eval.hpp"
#include "vpc/frame.hpp"
#include "vpc/pointray.hpp"
#include "vpc/prlp.hpp"
#include "vpc/simplex.hpp"

namespace {

using namespace vpc;

const ReportRow* find_row(const std::vector<ReportRow>& rows,
                          const std::string& leaves) {
  for (const ReportRow& r : rows)
    if (r.leaves == leaves) return &r;
  return nullptr;
}

bool near(const std::optional<double>& v, double want, double tol = 1e-6) {
  return v.has_value() && std::abs(*v - want) <= tol;
}

bool has(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

// min -x1 - x2 with 2x1 <= 1 and 2x2 <= 1: both integers fractional at the
// LP optimum (0.5, 0.5); the only integer point is the origin.
LinearProgram two_frac() {
  LinearProgram lp;
  lp.name = "two_frac";
  lp.n_cols = 2;
  lp.n_rows = 2;
  lp.objective = {-1.0, -1.0};
  lp.col_lower = {0.0, 0.0};
  lp.col_upper = {1.0, 1.0};
  lp.integer_flags = {true, true};
  SparseRow r0, r1;
  r0.push(0, 2.0);
  r1.push(1, 2.0);
  lp.rows = {r0, r1};
  lp.senses = {RowSense::LE, RowSense::LE};
  lp.rhs = {1.0, 1.0};
  lp.row_names = {"cap1", "cap2"};
  lp.col_names = {"x1", "x2"};
  return lp;
}

// Unit square with every variable continuous and no rows.
LinearProgram unit_square() {
  LinearProgram lp;
  lp.name = "square";
  lp.n_cols = 2;
  lp.n_rows = 0;
  lp.objective = {0.0, 0.0};
  lp.col_lower = {0.0, 0.0};
  lp.col_upper = {1.0, 1.0};
  lp.integer_flags = {false, false};
  return lp;
}

NonbasicFrame identity_frame(int n) {
  std::vector<FrameRow> rows(n);
  for (int k = 0; k < n; ++k) {
    rows[k].g.push(k, 1.0);
    rows[k].h = 0.0;
    rows[k].scale = 1.0;
    rows[k].var = k;
  }
  return NonbasicFrame(std::vector<double>(n, 0.0), std::move(rows));
}

}  // namespace

TEST_CASE("gap closure follows the exact ratio") {
  CHECK(*gap_closed(-2.5, -2.0, -2.0) == doctest::Approx(100.0));
  CHECK(*gap_closed(-2.5, -2.0, -2.5) == doctest::Approx(0.0));
  CHECK(*gap_closed(-2.5, -2.0, -2.25) == doctest::Approx(50.0));
  CHECK_FALSE(gap_closed(-2.0, -2.0, -2.0).has_value());
  CHECK_FALSE(gap_closed(-2.0, -2.0 + 5e-10, -2.0).has_value());
}

TEST_CASE("integer optimum by enumeration") {
  CHECK(*ip_by_enumeration(fixtures::knap1()) == doctest::Approx(-1.0));
  CHECK(*ip_by_enumeration(fixtures::knap2()) == doctest::Approx(-2.0));
  CHECK(*ip_by_enumeration(fixtures::cube3()) == doctest::Approx(-0.75));

  LinearProgram nohope = fixtures::knap1();
  nohope.rhs = {-1.0};
  CHECK_FALSE(ip_by_enumeration(nohope).has_value());

  LinearProgram unb;
  unb.name = "unb";
  unb.n_cols = 2;
  unb.n_rows = 0;
  unb.objective = {0.0, -1.0};
  unb.col_lower = {0.0, 0.0};
  unb.col_upper = {1.0, kInf};
  unb.integer_flags = {true, false};
  CHECK_FALSE(ip_by_enumeration(unb).has_value());

  CHECK_THROWS_AS((void)ip_by_enumeration(fixtures::knap2(), 2),
                  EnumerationLimit);
}

TEST_CASE("cut rows append as greater-equal constraints") {
  LinearProgram lp = fixtures::knap2();
  Cut c;
  c.coeffs = {-2.0, -1.0};
  c.beta = -2.0;
  c.kind = CutKind::Vpc;
  c.objective_label = "all_ones";
  LinearProgram ext = with_cut_rows(lp, {c});
  CHECK(ext.n_rows == 2);
  CHECK(ext.senses[1] == RowSense::GE);
  CHECK(ext.rhs[1] == -2.0);
  REQUIRE(ext.row_names.size() == 2);
  CHECK(ext.row_names[1] == "all_ones");
  CHECK(ext.rows[1].cols == std::vector<int>{0, 1});
  CHECK(lp.n_rows == 1);

  SimplexSolution s = solve_lp(ext);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective_value == doctest::Approx(-2.0));
}

TEST_CASE("cut activity splits by provenance class") {
  std::vector<double> x = {1.0, 0.0};
  Cut g;
  g.kind = CutKind::Gmic;
  g.coeffs = {-1.0, -1.0};
  g.beta = -1.0;
  Cut v1;
  v1.kind = CutKind::Vpc;
  v1.coeffs = {-2.0, -1.0};
  v1.beta = -2.0;
  Cut v2;
  v2.kind = CutKind::Vpc;
  v2.coeffs = {1.0, 0.0};
  v2.beta = 0.0;
  Cut o;
  o.kind = CutKind::OneSided;
  o.coeffs = {0.0, 1.0};
  o.beta = 0.0;

  ActiveCutStats st = active_cut_stats({g, v1, v2, o}, x);
  CHECK(st.gmic_total == 1);
  CHECK(near(st.gmic_pct(), 100.0));
  CHECK(st.vpc_total == 2);
  CHECK(near(st.vpc_pct(), 50.0));
  CHECK(near(st.onesided_pct(), 100.0));

  ActiveCutStats none = active_cut_stats({}, x);
  CHECK_FALSE(none.gmic_pct().has_value());
  CHECK_FALSE(none.vpc_pct().has_value());
  CHECK_FALSE(none.onesided_pct().has_value());

  Cut fuzzy = v1;
  fuzzy.beta = -2.0 - 0.5e-6 * 3.0;  // still inside the relative tolerance
  ActiveCutStats near_st = active_cut_stats({fuzzy}, x);
  CHECK(near_st.vpc_active == 1);
}

TEST_CASE("facet diagnostics label the knapsack split cut a facet") {
  LinearProgram lp = fixtures::knap2();
  SimplexSolution root = solve_lp(lp);
  REQUIRE(root.status == SolveStatus::Optimal);
  NonbasicFrame frame = make_frame(lp, root);
  TreeConfig tc;
  tc.max_leaves = 2;
  Disjunction d = build_partial_tree(lp, root, tc);
  PointRayCollection coll = build_simple_collection(lp, d, frame);
  Algorithm1Result r = run_algorithm1(lp, root, d, frame, coll);
  std::vector<Cut> vpcs;
  for (const Cut& c : r.pool.cuts())
    if (c.kind == CutKind::Vpc) vpcs.push_back(c);
  REQUIRE(vpcs.size() == 1);

  FacetReport rep = facet_diagnostics(lp, d, frame, coll, vpcs);
  CHECK(rep.hull_vertices == 4);
  CHECK(rep.hull_affine_rank == 3);
  REQUIRE(rep.cuts.size() == 1);
  CHECK(rep.cuts[0].tight_points == 2);
  CHECK(rep.cuts[0].facet);
  CHECK(rep.cuts[0].stray_rays == 0);
  CHECK(rep.cuts[0].standard_basis);
  CHECK(rep.implication_holds);

  CHECK_THROWS_AS(
      (void)facet_diagnostics(lp, d, frame, coll, vpcs, 1.0), TooLarge);
}

TEST_CASE("stray rays are tight ray rows without a tight owner point") {
  LinearProgram lp = unit_square();
  Disjunction d;
  d.source = "hand";
  Term t;
  t.id = 0;
  d.terms.push_back(t);
  d.p_star_index = 0;
  NonbasicFrame frame = identity_frame(2);

  PointRayCollection coll;
  PointEntry p;
  p.term_id = 0;
  p.frame = {1.0, 0.0};
  p.structural = {1.0, 0.0};
  coll.points.push_back(p);
  RayEntry ray;
  ray.owners = {1};
  ray.frame = {0.0, 1.0};
  ray.structural = {0.0, 1.0};
  coll.rays.push_back(ray);

  Cut c;
  c.kind = CutKind::Vpc;
  c.coeffs = {1.0, 0.0};
  c.beta = 1.0;
  c.objective_label = "hand";

  FacetReport rep = facet_diagnostics(lp, d, frame, coll, {c});
  CHECK(rep.hull_vertices == 4);
  REQUIRE(rep.cuts.size() == 1);
  CHECK(rep.cuts[0].tight_points == 2);
  CHECK(rep.cuts[0].facet);
  CHECK(rep.cuts[0].stray_rays == 1);
  CHECK_FALSE(rep.cuts[0].standard_basis);
  CHECK(rep.implication_holds);

  coll.rays[0].owners = {0};
  rep = facet_diagnostics(lp, d, frame, coll, {c});
  CHECK(rep.cuts[0].stray_rays == 0);
  CHECK(rep.cuts[0].standard_basis);

  Cut slack;
  slack.kind = CutKind::Vpc;
  slack.coeffs = {-1.0, -1.0};
  slack.beta = -2.5;
  Cut corner;
  corner.kind = CutKind::Vpc;
  corner.coeffs = {-1.0, -1.0};
  corner.beta = -2.0;
  rep = facet_diagnostics(lp, d, frame, coll, {slack, corner});
  CHECK(rep.cuts[0].tight_points == 0);
  CHECK_FALSE(rep.cuts[0].facet);
  CHECK_FALSE(rep.cuts[0].standard_basis);
  CHECK(rep.cuts[1].tight_points == 1);
  CHECK_FALSE(rep.cuts[1].facet);
  CHECK(rep.implication_holds);
}

TEST_CASE("both mode closes the knapsack gap end to end") {
  EvalConfig cfg;
  cfg.instance_name = "knap2";
  cfg.mode = "both";
  cfg.leaves = {2};
  EvalResult res = run_instance(fixtures::knap2(), cfg);

  REQUIRE(res.rows.size() == 1);
  const ReportRow& row = res.rows[0];
  CHECK(row.instance == "knap2");
  CHECK(row.mode == "both");
  CHECK(row.leaves == "2");
  CHECK(row.num_gmics == 1);
  CHECK(row.num_vpcs == 1);
  CHECK(row.num_onesided == 0);
  CHECK(near(row.lp_value, -2.5, 1e-9));
  CHECK(near(row.ip_value, -2.0, 1e-9));
  CHECK(near(row.db_value, -2.0, 1e-9));
  CHECK(near(row.gap_gmic, 100.0));
  CHECK(near(row.gap_vpc, 100.0));
  CHECK(near(row.gap_vpc_gmic, 100.0));
  CHECK(near(row.gap_max_gv, 100.0));
  CHECK(near(row.db_gap, 100.0));
  CHECK(row.objectives_tried == 1);
  CHECK(near(row.pct_fail, 0.0, 1e-12));
  CHECK(near(row.objs_per_cut, 1.0, 1e-12));
  CHECK(near(row.active_gmic_pct, 100.0));
  CHECK(near(row.active_vpc_pct, 100.0));
  CHECK_FALSE(row.active_onesided_pct.has_value());
  CHECK(has(row.note, "feasible_by_certificate"));
  CHECK(has(row.note, "cut limit"));
  CHECK_FALSE(has(row.note, "win:V"));
  CHECK(row.int_default_bounds == "0-inf");
  CHECK(row.seed == 628u);

  // The sidecar value and the enumerated one must agree.
  EvalConfig pinned = cfg;
  pinned.ip_value = -2.0;
  EvalResult res2 = run_instance(fixtures::knap2(), pinned);
  REQUIRE(res2.rows.size() == 1);
  CHECK(near(res2.rows[0].gap_vpc, 100.0));

  bool found_vpc = false;
  for (const CutRecord& rec : res.cut_records) {
    CHECK(rec.instance == "knap2");
    if (rec.cut.kind == CutKind::Vpc) {
      found_vpc = true;
      CHECK(rec.leaves == "2");
      // 2x1 + x2 <= 2 up to positive scaling.
      REQUIRE(rec.cut.coeffs.size() == 2);
      double s = rec.cut.coeffs[0] / -2.0;
      CHECK(s > 0.0);
      CHECK(rec.cut.coeffs[1] == doctest::Approx(-1.0 * s));
      CHECK(rec.cut.beta == doctest::Approx(-2.0 * s));
    }
  }
  CHECK(found_vpc);
}

TEST_CASE("one-sided cuts ride along in the one-variable report") {
  EvalConfig cfg;
  cfg.instance_name = "knap1";
  cfg.mode = "both";
  cfg.leaves = {2};
  EvalResult res = run_instance(fixtures::knap1(), cfg);
  REQUIRE(res.rows.size() == 1);
  const ReportRow& row = res.rows[0];
  CHECK(row.num_gmics == 1);
  CHECK(row.num_vpcs == 1);
  CHECK(row.num_onesided == 1);
  CHECK(near(row.gap_gmic, 100.0));
  CHECK(near(row.gap_vpc, 100.0));
  CHECK(near(row.gap_vpc_gmic, 100.0));
  CHECK(near(row.db_gap, 100.0));
  CHECK(near(row.active_gmic_pct, 100.0));
  CHECK(near(row.active_vpc_pct, 100.0));
  CHECK(near(row.active_onesided_pct, 100.0));
}

TEST_CASE("leaf schedule adds best and combined rows") {
  EvalConfig cfg;
  cfg.instance_name = "knap2";
  cfg.mode = "both";
  cfg.leaves = {2, 4};
  EvalResult res = run_instance(fixtures::knap2(), cfg);

  REQUIRE(res.rows.size() == 4);
  CHECK(res.rows[0].leaves == "2");
  CHECK(res.rows[1].leaves == "4");
  CHECK(res.rows[2].leaves == "best");
  CHECK(res.rows[3].leaves == "combined");

  const ReportRow* r2 = find_row(res.rows, "2");
  const ReportRow* r4 = find_row(res.rows, "4");
  const ReportRow* best = find_row(res.rows, "best");
  const ReportRow* comb = find_row(res.rows, "combined");
  REQUIRE(r2);
  REQUIRE(r4);
  REQUIRE(best);
  REQUIRE(comb);

  for (const ReportRow* r : {r2, r4}) {
    REQUIRE(r->gap_vpc.has_value());
    REQUIRE(r->db_gap.has_value());
    CHECK(*r->gap_vpc >= -1e-6);
    CHECK(*r->gap_vpc <= 100.0 + 1e-6);
    CHECK(*r->gap_vpc <= *r->db_gap + 1e-6);
    REQUIRE(r->gap_gmic.has_value());
    REQUIRE(r->gap_vpc_gmic.has_value());
    CHECK(*r->gap_vpc_gmic >=
          std::max(*r->gap_gmic, *r->gap_vpc) - 1e-6);
    CHECK(near(r->gap_max_gv, std::max(*r->gap_gmic, *r->gap_vpc), 1e-12));
  }
  CHECK(*r4->db_value >= *r2->db_value - 1e-9);

  CHECK(near(best->gap_vpc, std::max(*r2->gap_vpc, *r4->gap_vpc), 1e-12));
  CHECK(near(best->db_gap, std::max(*r2->db_gap, *r4->db_gap), 1e-12));
  CHECK(has(best->note, "best of "));

  CHECK(has(comb->note, "union of 2 runs"));
  CHECK(comb->objectives_tried == r2->objectives_tried + r4->objectives_tried);
  CHECK(comb->fail_duplicate == r2->fail_duplicate + r4->fail_duplicate);
  REQUIRE(comb->gap_vpc.has_value());
  CHECK(*comb->gap_vpc >= *r2->gap_vpc - 1e-6);
  CHECK(*comb->gap_vpc >= *r4->gap_vpc - 1e-6);
  CHECK(near(comb->db_gap, std::max(*r2->db_gap, *r4->db_gap), 1e-12));
}

TEST_CASE("vpc mode leaves the rounding columns empty") {
  EvalConfig cfg;
  cfg.instance_name = "knap2";
  cfg.mode = "vpc";
  cfg.leaves = {2};
  EvalResult res = run_instance(fixtures::knap2(), cfg);
  REQUIRE(res.rows.size() == 1);
  const ReportRow& row = res.rows[0];
  CHECK(row.num_gmics == 0);
  CHECK_FALSE(row.gap_gmic.has_value());
  CHECK_FALSE(row.gap_vpc_gmic.has_value());
  CHECK_FALSE(row.gap_max_gv.has_value());
  CHECK_FALSE(row.active_gmic_pct.has_value());
  CHECK(near(row.gap_vpc, 100.0));
  CHECK(near(row.active_vpc_pct, 100.0));
  for (const CutRecord& rec : res.cut_records) {
    CHECK(rec.cut.kind != CutKind::Gmic);
    CHECK(rec.leaves == "2");
  }
}

TEST_CASE("gmic mode reports only the rounding family") {
  EvalConfig cfg;
  cfg.instance_name = "knap2";
  cfg.mode = "gmic";
  EvalResult res = run_instance(fixtures::knap2(), cfg);
  REQUIRE(res.rows.size() == 1);
  const ReportRow& row = res.rows[0];
  CHECK(row.leaves == "-");
  CHECK(row.num_gmics == 1);
  CHECK(row.num_vpcs == 0);
  CHECK(near(row.gap_gmic, 100.0));
  CHECK_FALSE(row.gap_vpc.has_value());
  CHECK_FALSE(row.gap_vpc_gmic.has_value());
  CHECK(near(row.active_gmic_pct, 100.0));
  REQUIRE(res.cut_records.size() == 1);
  CHECK(res.cut_records[0].leaves == "root");
  CHECK(res.cut_records[0].cut.kind == CutKind::Gmic);
}

TEST_CASE("splits mode mirrors the two-leaf tree on one fractional variable") {
  EvalConfig cfg;
  cfg.instance_name = "knap2";
  cfg.mode = "splits";
  EvalResult res = run_instance(fixtures::knap2(), cfg);
  REQUIRE(res.rows.size() == 1);
  const ReportRow& row = res.rows[0];
  CHECK(row.leaves == "split:1");
  CHECK(row.num_vpcs == 1);
  CHECK(near(row.gap_vpc, 100.0));
  CHECK(near(row.db_gap, 100.0));
}

TEST_CASE("crosses pair up the fractional variables") {
  EvalConfig knap;
  knap.instance_name = "knap2";
  knap.mode = "crosses";
  EvalResult res = run_instance(fixtures::knap2(), knap);
  REQUIRE(res.rows.size() == 1);
  CHECK(res.rows[0].leaves == "-");
  CHECK(has(res.rows[0].note, "crosses need two fractional variables"));

  EvalConfig cfg;
  cfg.instance_name = "two_frac";
  cfg.mode = "crosses";
  EvalResult res2 = run_instance(two_frac(), cfg);
  REQUIRE(res2.rows.size() == 1);
  const ReportRow& row = res2.rows[0];
  CHECK(row.leaves == "cross:0,1");
  CHECK(near(row.lp_value, -1.0, 1e-9));
  CHECK(near(row.ip_value, 0.0, 1e-9));
  CHECK(row.num_onesided == 2);
  CHECK(near(row.db_gap, 100.0));
  CHECK(near(row.gap_vpc, 100.0));
}

TEST_CASE("rounds mode stacks a second generation pass") {
  EvalConfig cfg;
  cfg.instance_name = "knap2";
  cfg.mode = "rounds";
  cfg.leaves = {2};
  EvalResult res = run_instance(fixtures::knap2(), cfg);
  REQUIRE(res.rows.size() == 1);
  const ReportRow& row = res.rows[0];
  CHECK(row.leaves == "2");
  CHECK(has(row.note, "round 1:"));
  CHECK(has(row.note, "round 2"));
  CHECK(near(row.gap_vpc, 100.0));
  CHECK(near(row.gap_vpc_gmic, 100.0));
  CHECK(row.num_vpcs >= 1);
}

TEST_CASE("rows survive instances without an integrality gap") {
  LinearProgram lp;
  lp.name = "tight";
  lp.n_cols = 1;
  lp.n_rows = 1;
  lp.objective = {-1.0};
  lp.col_lower = {0.0};
  lp.col_upper = {5.0};
  lp.integer_flags = {true};
  SparseRow r;
  r.push(0, 1.0);
  lp.rows = {r};
  lp.senses = {RowSense::LE};
  lp.rhs = {1.0};
  lp.row_names = {"cap"};
  lp.col_names = {"x"};

  EvalConfig cfg;
  cfg.mode = "both";
  cfg.leaves = {2};
  EvalResult res = run_instance(lp, cfg);
  REQUIRE(res.rows.size() == 1);
  const ReportRow& row = res.rows[0];
  CHECK(row.leaves == "-");
  CHECK(has(row.note, "vertex already integral"));
  CHECK(has(row.note, "no integrality gap"));
  CHECK_FALSE(row.gap_vpc.has_value());
  CHECK_FALSE(row.gap_gmic.has_value());
  CHECK(row.num_gmics == 0);
  CHECK(near(row.lp_value, -1.0, 1e-9));
  CHECK(near(row.ip_value, -1.0, 1e-9));
}

TEST_CASE("oversized enumeration leaves the optimum unknown") {
  EvalConfig cfg;
  cfg.instance_name = "knap2";
  cfg.mode = "both";
  cfg.leaves = {2};
  cfg.ip_enum_limit = 2;
  EvalResult res = run_instance(fixtures::knap2(), cfg);
  REQUIRE(res.rows.size() == 1);
  CHECK_FALSE(res.rows[0].ip_value.has_value());
  CHECK_FALSE(res.rows[0].gap_vpc.has_value());
  CHECK(has(res.rows[0].note, "integer optimum unknown"));
  REQUIRE(res.log.size() >= 1);
  CHECK(has(res.log[0], "enumeration skipped"));
  // Generation itself still ran.
  CHECK(res.rows[0].num_vpcs == 1);
}

TEST_CASE("root failures annotate a single row") {
  LinearProgram lp = fixtures::knap1();
  SparseRow force;
  force.push(0, 1.0);
  lp.rows.push_back(force);
  lp.senses.push_back(RowSense::GE);
  lp.rhs.push_back(5.0);
  lp.rows[0] = SparseRow{};
  lp.rows[0].push(0, 1.0);
  lp.rhs[0] = 1.0;  // x <= 1 and x >= 5
  lp.n_rows = 2;
  lp.row_names.push_back("force");

  EvalConfig cfg;
  cfg.mode = "both";
  EvalResult res = run_instance(lp, cfg);
  REQUIRE(res.rows.size() == 1);
  CHECK(has(res.rows[0].note, "root LP infeasible"));
  CHECK_FALSE(res.numerical_failure);

  EvalConfig bad;
  bad.mode = "bad";
  CHECK_THROWS_AS((void)run_instance(fixtures::knap1(), bad),
                  std::invalid_argument);
}

TEST_CASE("report rows are deterministic apart from timing") {
  EvalConfig cfg;
  cfg.instance_name = "knap2";
  cfg.mode = "both";
  cfg.leaves = {2, 4};
  EvalResult a = run_instance(fixtures::knap2(), cfg);
  EvalResult b = run_instance(fixtures::knap2(), cfg);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const ReportRow& ra = a.rows[i];
    const ReportRow& rb = b.rows[i];
    CHECK(ra.leaves == rb.leaves);
    CHECK(ra.num_gmics == rb.num_gmics);
    CHECK(ra.num_vpcs == rb.num_vpcs);
    CHECK(ra.num_onesided == rb.num_onesided);
    CHECK(ra.gap_vpc == rb.gap_vpc);
    CHECK(ra.gap_gmic == rb.gap_gmic);
    CHECK(ra.gap_vpc_gmic == rb.gap_vpc_gmic);
    CHECK(ra.db_gap == rb.db_gap);
    CHECK(ra.objectives_tried == rb.objectives_tried);
    CHECK(ra.note == rb.note);
  }
  REQUIRE(a.cut_records.size() == b.cut_records.size());
  for (std::size_t i = 0; i < a.cut_records.size(); ++i) {
    CHECK(a.cut_records[i].leaves == b.cut_records[i].leaves);
    CHECK(a.cut_records[i].cut.coeffs == b.cut_records[i].cut.coeffs);
    CHECK(a.cut_records[i].cut.beta == b.cut_records[i].cut.beta);
  }
}
