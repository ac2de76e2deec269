#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vpc/cut.hpp"
#include "vpc/disjunction.hpp"
#include "vpc/frame.hpp"
#include "vpc/lp.hpp"

namespace vpc {

// One generating point of the disjunctive relaxation, stored both in frame
// coordinates (the PRLP row) and structural coordinates (for oracles).
struct PointEntry {
  int term_id = -1;
  std::vector<double> frame;
  std::vector<double> structural;
  double objective = 0.0;
  // Neighbor collections pin the term optimum rows to equality.
  bool optimum_tight = false;
  // Frame coordinate index when the row has a single nonzero, else -1.
  int bound_var = -1;
};

// A generating ray, unit max-norm in frame coordinates. Rays shared by
// several terms after dedup keep every owner.
struct RayEntry {
  std::vector<int> owners;
  int nonbasic_var = -1;
  std::vector<double> frame;
  std::vector<double> structural;
  int bound_var = -1;
};

struct BoundRowInfo {
  bool is_point = false;
  int entry_index = -1;
  int var = -1;
  double coef = 0.0;
};

struct PointRayCollection {
  std::vector<PointEntry> points;
  std::vector<RayEntry> rays;
  std::vector<BoundRowInfo> bound_rows;
  std::vector<std::string> dedup_log;
};

struct EnumerationLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One optimal point per feasible term plus the rays of its basis cone.
PointRayCollection build_simple_collection(const LinearProgram& lp,
                                           const Disjunction& d,
                                           const NonbasicFrame& frame);

// Term optima (marked as equality rows) plus one point per incident edge of
// each optimum; unbounded edges contribute rays. Throws EnumerationLimit if
// a term optimum has too many tight-set subsets to walk.
PointRayCollection build_neighbor_collection(const LinearProgram& lp,
                                             const Disjunction& d,
                                             const NonbasicFrame& frame,
                                             int max_edges_per_term = 5000);

struct ValidationResult {
  bool valid = true;
  std::vector<double> witness;
  double value = 0.0;
  std::string detail;
};

// Independent validity oracle: enumerates every integer assignment within
// bounds and minimizes alpha^T x over the continuous fiber by brute-force
// vertex enumeration. Valid iff every feasible fiber stays on the good side
// of beta - tol*(1+|beta|).
class BruteforceOracle {
 public:
  explicit BruteforceOracle(const LinearProgram& lp,
                            long long max_assignments = 1000000);
  ValidationResult validate(const std::vector<double>& alpha, double beta,
                            double tol = 1e-6) const;
  // Least value of c over the enumerated set; empty when nothing is feasible
  // or some recession direction drives c below every bound.
  std::optional<double> minimize(const std::vector<double>& c) const;

 private:
  struct Fiber {
    std::vector<std::vector<double>> vertices;
    std::vector<std::vector<double>> rays;
  };
  std::vector<Fiber> fibers_;
  int n_cols_ = 0;
};

ValidationResult validate_cut_bruteforce(const Cut& cut, const LinearProgram& lp,
                                         double tol = 1e-6);

// True iff x (frame coordinates) = sum lambda_i p_i + sum mu_j r_j with
// lambda >= 0 summing to one and mu >= 0, within tol.
bool membership_in_pointray_hull(const std::vector<double>& x_frame,
                                 const PointRayCollection& coll,
                                 double tol = 1e-7);

std::string to_debug_json(const PointRayCollection& coll);

}  // namespace vpc
