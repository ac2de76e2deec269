#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace vpc {

enum class CutKind { Gmic, Vpc, OneSided };

// Structural-space inequality alpha . x >= beta.
struct Cut {
  std::vector<double> coeffs;
  double beta = 0.0;
  CutKind kind = CutKind::Vpc;
  int source_col = -1;          // GMIC tableau row variable / one-sided column
  std::string objective_label;  // which separation objective produced it
  std::string leaves_tag;       // disjunction the cut came from

  int support() const {
    int s = 0;
    for (double v : coeffs)
      if (v != 0.0) ++s;
    return s;
  }

  double dynamism() const {
    double mx = 0.0, mn = 0.0;
    for (double v : coeffs) {
      double a = std::abs(v);
      if (a == 0.0) continue;
      mx = std::max(mx, a);
      mn = mn == 0.0 ? a : std::min(mn, a);
    }
    return mn == 0.0 ? 0.0 : mx / mn;
  }

  double norm2() const {
    double s = 0.0;
    for (double v : coeffs) s += v * v;
    return std::sqrt(s);
  }

  // (beta - alpha . x) / ||alpha||; positive when x violates the cut.
  double euclidean_violation(const std::vector<double>& x) const {
    double act = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) act += coeffs[j] * x[j];
    double n = norm2();
    return n == 0.0 ? 0.0 : (beta - act) / n;
  }

  double activity(const std::vector<double>& x) const {
    double act = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) act += coeffs[j] * x[j];
    return act;
  }
};

const char* cut_kind_name(CutKind kind);

}  // namespace vpc
