#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vpc/cut.hpp"
#include "vpc/lp.hpp"
#include "vpc/simplex.hpp"

namespace vpc {

// One rank-one mixed-integer rounding cut per integer basic variable whose
// value at the vertex is at least away_tol from an integer.
std::vector<Cut> generate_gmics(const LinearProgram& lp,
                                const SimplexSolution& sol,
                                double away_tol = 1e-5);

enum class CutReject { UnboundedSubstitution, Dynamism };
const char* cut_reject_name(CutReject r);

struct PostprocessResult {
  std::optional<Cut> cut;
  std::optional<CutReject> reject;
};

// Coefficient hygiene: |g| < 1e-7 dropped outright; 1e-7 <= |g| < 1e-5
// replaced by the bound substitution that keeps the inequality valid
// (upper bound for g > 0, lower for g < 0); a needed infinite bound or a
// max/min coefficient ratio above 1e8 rejects the cut.
PostprocessResult postprocess(Cut candidate, const LinearProgram& lp);

enum class PoolOutcome { Added, Duplicate, Dominated, Parallel };
const char* pool_outcome_name(PoolOutcome o);

// Keeps accepted cuts, filtering same-kind duplicates and dominated copies,
// and near-parallel pairs among the VPC class (cosine within 1e-3 of one):
// the survivor separates the reference vertex by a greater euclidean
// distance, ties broken toward the sparser cut.
class CutPool {
 public:
  explicit CutPool(std::vector<double> xbar) : xbar_(std::move(xbar)) {}

  PoolOutcome add(const Cut& cut);

  const std::vector<Cut>& cuts() const { return cuts_; }
  const std::vector<std::string>& rejection_log() const { return log_; }
  const std::vector<double>& xbar() const { return xbar_; }
  int count(CutKind k) const;

 private:
  std::vector<double> xbar_;
  std::vector<Cut> cuts_;
  std::vector<std::string> log_;
};

}  // namespace vpc
