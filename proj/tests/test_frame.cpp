#include "vpc/frame.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "support/fixtures.hpp"

using namespace vpc;

namespace {

std::vector<double> normalized_image(const NonbasicFrame& f,
                                     const std::vector<double>& dir) {
  std::vector<double> img = f.ray_image(dir);
  double mx = 0.0;
  for (double v : img) mx = std::max(mx, std::abs(v));
  REQUIRE(mx > 0.0);
  for (double& v : img) v /= mx;
  return img;
}

}  // namespace

TEST_CASE("knap1 frame") {
  LinearProgram lp = fixtures::knap1();
  SimplexSolution s = solve_lp(lp);
  REQUIRE(s.status == SolveStatus::Optimal);
  NonbasicFrame f = make_frame(lp, s);
  REQUIRE(f.dim() == 1);
  // Single cobasis row from the knapsack slack: coordinate (3 - 2x)/2.
  CHECK(f.forward({1.0})[0] == doctest::Approx(0.5));
  CHECK(f.forward({1.5})[0] == doctest::Approx(0.0));
  CHECK(f.inverse({0.5})[0] == doctest::Approx(1.0));
  CHECK(f.functional({-1.0})[0] == doctest::Approx(1.0));

  std::vector<double> alpha;
  double beta;
  f.cut_to_structural({1.0}, 0.5, &alpha, &beta);
  CHECK(alpha[0] == doctest::Approx(-1.0));
  CHECK(beta == doctest::Approx(-1.0));
}

TEST_CASE("knap2 frame maps points, rays, cuts") {
  LinearProgram lp = fixtures::knap2();
  SimplexSolution s = solve_lp(lp);
  REQUIRE(s.status == SolveStatus::Optimal);
  NonbasicFrame f = make_frame(lp, s);
  REQUIRE(f.dim() == 2);
  // Row order follows nonbasic variable index: x1 first, then the row slack.
  CHECK(f.rows()[0].var == 0);
  CHECK(f.rows()[1].var == 2);

  std::vector<double> pa = f.forward({1.0, 0.0});
  CHECK(pa[0] == doctest::Approx(0.0));
  CHECK(pa[1] == doctest::Approx(0.5));
  std::vector<double> pb = f.forward({0.5, 1.0});
  CHECK(pb[0] == doctest::Approx(0.5));
  CHECK(pb[1] == doctest::Approx(0.0));

  std::vector<double> ct = f.functional({-2.0, -1.0});
  CHECK(ct[0] == doctest::Approx(1.0));
  CHECK(ct[1] == doctest::Approx(1.0));
  // functional reproduces objective differences at the term optima.
  CHECK(ct[0] * pa[0] + ct[1] * pa[1] == doctest::Approx(0.5));

  std::vector<double> ra = normalized_image(f, {-1.0, 0.0});
  CHECK(ra[0] == doctest::Approx(1.0));
  CHECK(ra[1] == doctest::Approx(1.0));
  std::vector<double> rb = normalized_image(f, {0.0, -1.0});
  CHECK(rb[0] == doctest::Approx(0.0));
  CHECK(rb[1] == doctest::Approx(1.0));
  std::vector<double> rc = normalized_image(f, {-1.0, 1.0});
  CHECK(rc[0] == doctest::Approx(1.0));
  CHECK(rc[1] == doctest::Approx(0.0));

  std::vector<double> alpha;
  double beta;
  f.cut_to_structural({1.0, 1.0}, 0.5, &alpha, &beta);
  CHECK(alpha[0] == doctest::Approx(-2.0));
  CHECK(alpha[1] == doctest::Approx(-1.0));
  CHECK(beta == doctest::Approx(-2.0));

  double beta_f;
  std::vector<double> back = f.cut_to_frame(alpha, beta, &beta_f);
  CHECK(back[0] == doctest::Approx(1.0));
  CHECK(back[1] == doctest::Approx(1.0));
  CHECK(beta_f == doctest::Approx(0.5));
}

TEST_CASE("basis cone rays of knap2 terms") {
  LinearProgram lp = fixtures::knap2();

  LinearProgram ta = lp;
  ta.col_lower[1] = ta.col_upper[1] = 0.0;
  SimplexSolution sa = solve_lp(ta);
  REQUIRE(sa.status == SolveStatus::Optimal);
  std::vector<ConeRay> ra = basis_cone_rays(ta, sa);
  REQUIRE(ra.size() == 2);
  CHECK(ra[0].nonbasic_var == 0);
  CHECK(ra[0].direction[0] == doctest::Approx(-1.0));
  CHECK(ra[0].direction[1] == doctest::Approx(0.0));
  CHECK(ra[1].nonbasic_var == 1);
  CHECK(ra[1].direction[0] == doctest::Approx(0.0));
  CHECK(ra[1].direction[1] == doctest::Approx(-1.0));

  LinearProgram tb = lp;
  tb.col_lower[1] = tb.col_upper[1] = 1.0;
  SimplexSolution sb = solve_lp(tb);
  REQUIRE(sb.status == SolveStatus::Optimal);
  std::vector<ConeRay> rb = basis_cone_rays(tb, sb);
  REQUIRE(rb.size() == 2);
  // x2 relaxes upward per its positive reduced cost; the slack ray pushes x1
  // down at half rate.
  CHECK(rb[0].nonbasic_var == 1);
  CHECK(rb[0].direction[0] == doctest::Approx(-1.0));
  CHECK(rb[0].direction[1] == doctest::Approx(1.0));
  CHECK(rb[1].nonbasic_var == 2);
  CHECK(rb[1].direction[0] == doctest::Approx(-0.5));
  CHECK(rb[1].direction[1] == doctest::Approx(0.0));
}

TEST_CASE("own-basis rays map to unit axes") {
  for (LinearProgram lp : {fixtures::knap2(), fixtures::cube3()}) {
    SimplexSolution s = solve_lp(lp);
    REQUIRE(s.status == SolveStatus::Optimal);
    NonbasicFrame f = make_frame(lp, s);
    std::vector<ConeRay> rays = basis_cone_rays(lp, s);
    REQUIRE((int)rays.size() == f.dim());
    for (int k = 0; k < (int)rays.size(); ++k) {
      CHECK(rays[k].nonbasic_var == f.rows()[k].var);
      std::vector<double> img = f.ray_image(rays[k].direction);
      for (int t = 0; t < f.dim(); ++t) {
        if (t == k) CHECK(img[t] > 1e-9);
        else CHECK(img[t] == doctest::Approx(0.0).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("frame round trips on cube3") {
  LinearProgram lp = fixtures::cube3();
  SimplexSolution s = solve_lp(lp);
  REQUIRE(s.status == SolveStatus::Optimal);
  NonbasicFrame f = make_frame(lp, s);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x = {u(rng), u(rng), u(rng)};
    std::vector<double> q = f.forward(x);
    std::vector<double> back = f.inverse(q);
    for (int j = 0; j < 3; ++j) CHECK(back[j] == doctest::Approx(x[j]).epsilon(1e-9));

    std::vector<double> c = {u(rng), u(rng), u(rng)};
    std::vector<double> cf = f.functional(c);
    double lhs = 0.0;
    for (int k = 0; k < 3; ++k) lhs += cf[k] * q[k];
    double rhs = 0.0;
    for (int j = 0; j < 3; ++j) rhs += c[j] * (x[j] - f.origin()[j]);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("tableau row of knap2") {
  LinearProgram lp = fixtures::knap2();
  SimplexSolution s = solve_lp(lp);
  REQUIRE(s.status == SolveStatus::Optimal);
  TableauRow row = tableau_row(lp, s, 1);
  CHECK(row.basic_var == 1);
  CHECK(row.rhs == doctest::Approx(1.5));
  REQUIRE(row.vars == std::vector<int>{0, 2});
  CHECK(row.coefs[0] == doctest::Approx(1.0));
  CHECK(row.coefs[1] == doctest::Approx(0.5));
}

TEST_CASE("degeneracy detector") {
  LinearProgram k2 = fixtures::knap2();
  SimplexSolution s2 = solve_lp(k2);
  CHECK_FALSE(is_degenerate_vertex(k2, s2));

  LinearProgram c3 = fixtures::cube3();
  SimplexSolution s3 = solve_lp(c3);
  CHECK(is_degenerate_vertex(c3, s3));
}
