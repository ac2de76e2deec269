#pragma once

#include <vector>

#include "vpc/lp.hpp"
#include "vpc/simplex.hpp"

namespace vpc {

// One cobasis row: frame coordinate = scale * (g . x - h), zero at the frame
// origin and nonnegative inside the basis cone. scale makes max |g| equal 1.
struct FrameRow {
  SparseRow g;
  double h = 0.0;
  double scale = 1.0;
  int var = -1;  // nonbasic variable the row came from (slacks offset by n)
};

// Coordinate change that puts an LP-optimal vertex at the origin with the
// relaxed cobasis constraints as axes.
class NonbasicFrame {
 public:
  NonbasicFrame() = default;
  NonbasicFrame(std::vector<double> origin, std::vector<FrameRow> rows);

  int dim() const { return (int)rows_.size(); }
  const std::vector<double>& origin() const { return origin_; }
  const std::vector<FrameRow>& rows() const { return rows_; }

  std::vector<double> forward(const std::vector<double>& x) const;
  std::vector<double> ray_image(const std::vector<double>& r) const;
  std::vector<double> inverse(const std::vector<double>& coords) const;
  // c_f with c_f . forward(x) = c . x - c . origin for all x.
  std::vector<double> functional(const std::vector<double>& c) const;
  // Frame cut alpha_f . q >= beta_f  ->  structural alpha . x >= beta.
  void cut_to_structural(const std::vector<double>& alpha_f, double beta_f,
                         std::vector<double>* alpha, double* beta) const;
  // Structural cut -> frame cut; returns alpha_f, writes beta_f.
  std::vector<double> cut_to_frame(const std::vector<double>& alpha, double beta,
                                   double* beta_f) const;

 private:
  std::vector<double> origin_;
  std::vector<FrameRow> rows_;
  std::vector<double> rinv_;  // row-major inverse of the matrix with rows g_k
};

// Builds the frame at an Optimal solution. Throws if a nonbasic variable is
// Free or the cobasis rows are singular.
NonbasicFrame make_frame(const LinearProgram& lp, const SimplexSolution& sol);

// Extreme ray of the cone obtained by relaxing one nonbasic variable off its
// bound; direction is structural-space, not normalized.
struct ConeRay {
  std::vector<double> direction;
  int nonbasic_var = -1;
};
std::vector<ConeRay> basis_cone_rays(const LinearProgram& lp,
                                     const SimplexSolution& sol);

// x_basic = rhs - sum coefs[k] * x[vars[k]] over the nonbasic variables.
struct TableauRow {
  int basic_var = -1;
  double rhs = 0.0;
  std::vector<int> vars;
  std::vector<double> coefs;
};
TableauRow tableau_row(const LinearProgram& lp, const SimplexSolution& sol,
                       int basic_var);

// True when some basic variable sits on one of its finite bounds, i.e. the
// vertex has more than dim-many tight constraints.
bool is_degenerate_vertex(const LinearProgram& lp, const SimplexSolution& sol,
                          double tol = 1e-7);

}  // namespace vpc
