#pragma once

#include <Eigen/Dense>

namespace vpc {

// LU factorization of a square basis matrix, kept for both B and B^T solves.
class DenseLu {
 public:
  bool factor(const Eigen::MatrixXd& B) {
    dim_ = (int)B.rows();
    if (dim_ == 0) return true;
    lu_.compute(B);
    if (!lu_.isInvertible()) return false;
    lut_.compute(B.transpose());
    return lut_.isInvertible();
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& v) const {
    if (dim_ == 0) return v;
    return lu_.solve(v);
  }

  Eigen::VectorXd solve_transpose(const Eigen::VectorXd& v) const {
    if (dim_ == 0) return v;
    return lut_.solve(v);
  }

 private:
  int dim_ = 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu_;
  Eigen::FullPivLU<Eigen::MatrixXd> lut_;
};

}  // namespace vpc
