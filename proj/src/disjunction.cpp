#include "vpc/disjunction.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "json.hpp"

namespace vpc {

namespace {

constexpr double kLargeGain = 1e10;
constexpr double kScoreFloor = 1e-6;

double fractional_part_distance(double v) {
  return std::abs(v - std::round(v));
}

bool is_integral_solution(const LinearProgram& lp, const std::vector<double>& x,
                          double away_tol) {
  for (int j = 0; j < lp.n_cols; ++j)
    if (lp.integer_flags[j] && fractional_part_distance(x[j]) > away_tol)
      return false;
  return true;
}

SimplexSolution solve_with(const LinearProgram& lp, const Basis* warm) {
  SimplexSolution s = solve_lp(lp, warm);
  if (s.status == SolveStatus::NumericalFailure ||
      s.status == SolveStatus::IterationLimit)
    throw NumericalError("LP solve failed while building a disjunction");
  return s;
}

Cut one_sided_cut(const LinearProgram& lp, int col, bool upper_branch_infeasible,
                  double bound) {
  // upper_branch_infeasible: x_col >= ceil was infeasible, so x_col <= floor.
  Cut c;
  c.coeffs.assign(lp.n_cols, 0.0);
  c.kind = CutKind::OneSided;
  c.source_col = col;
  c.objective_label = "bound:" + std::to_string(col);
  if (upper_branch_infeasible) {
    c.coeffs[col] = -1.0;
    c.beta = -bound;
  } else {
    c.coeffs[col] = 1.0;
    c.beta = bound;
  }
  return c;
}

void finalize(Disjunction* d) {
  d->best_term_value = kInf;
  d->p_star_index = -1;
  for (std::size_t t = 0; t < d->terms.size(); ++t) {
    const Term& term = d->terms[t];
    if (term.pruned == Pruned::Infeasible) continue;
    if (term.value < d->best_term_value - 1e-12) {
      d->best_term_value = term.value;
      d->p_star_index = (int)t;
    }
  }
}

}  // namespace

std::vector<int> fractional_integers(const LinearProgram& lp,
                                     const std::vector<double>& x,
                                     double away_tol) {
  std::vector<int> out;
  for (int j = 0; j < lp.n_cols; ++j)
    if (lp.integer_flags[j] && fractional_part_distance(x[j]) > away_tol)
      out.push_back(j);
  return out;
}

LinearProgram term_lp(const LinearProgram& lp, const Term& term) {
  LinearProgram t = lp;
  for (const BoundChange& bc : term.bound_changes) {
    if (bc.is_upper) t.col_upper[bc.col] = std::min(t.col_upper[bc.col], bc.value);
    else t.col_lower[bc.col] = std::max(t.col_lower[bc.col], bc.value);
  }
  return t;
}

double disjunctive_lower_bound(const Disjunction& d) {
  double v = kInf;
  for (const Term& t : d.terms)
    if (t.pruned != Pruned::Infeasible) v = std::min(v, t.value);
  return v;
}

namespace {

struct Node {
  int id = -1;
  std::vector<BoundChange> bound_changes;
  SimplexSolution sol;
  double value = kInf;
  int n_frac = 0;
  Pruned pruned = Pruned::No;
  bool open = false;
  bool branched = false;
};

class TreeBuilder {
 public:
  TreeBuilder(const LinearProgram& lp, const SimplexSolution& root,
              const TreeConfig& cfg)
      : lp_(lp), cfg_(cfg) {
    Node r;
    r.id = 0;
    r.sol = root;
    r.value = root.objective_value;
    r.n_frac = (int)fractional_integers(lp, root.primal_values, cfg.away_tol).size();
    r.open = r.n_frac > 0;
    if (!r.open) r.pruned = Pruned::Integral;
    if (r.pruned == Pruned::Integral) incumbent_ = r.value;
    nodes_.push_back(std::move(r));
  }

  Disjunction run() {
    auto start = std::chrono::steady_clock::now();
    Disjunction d;
    d.source = "tree:" + std::to_string(cfg_.max_leaves);
    int leaves = 1;
    bool first_branch = true;
    while (leaves < cfg_.max_leaves) {
      if (std::isfinite(cfg_.time_limit_s)) {
        double el = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                  start).count();
        if (el > cfg_.time_limit_s) {
          d.time_limit_hit = true;
          break;
        }
      }
      int pick = select_node();
      if (pick < 0) break;
      if (branch(pick, first_branch ? &d.one_sided_cuts : nullptr)) ++leaves;
      first_branch = false;
    }
    d.proved_optimality = select_node() < 0;
    d.incumbent = incumbent_;

    // Leaves in id order become the terms. Root-level bound tightenings apply
    // to every term so the disjunctive hull honors the one-sided cuts.
    std::vector<int> leaf_ids;
    for (const Node& n : nodes_)
      if (!n.branched) leaf_ids.push_back(n.id);
    for (int id : leaf_ids) {
      const Node& n = nodes_[id];
      Term t;
      t.id = (int)d.terms.size();
      t.bound_changes = root_fixes_;
      t.bound_changes.insert(t.bound_changes.end(), n.bound_changes.begin(),
                             n.bound_changes.end());
      t.pruned = n.pruned;
      if (n.pruned != Pruned::Infeasible) {
        t.solution = n.sol;
        t.value = n.value;
      }
      d.terms.push_back(std::move(t));
    }
    finalize(&d);
    return d;
  }

 private:
  const LinearProgram& lp_;
  TreeConfig cfg_;
  std::vector<Node> nodes_;
  std::optional<double> incumbent_;
  // Bound changes proven valid for the whole problem by infeasible sides of
  // root-node probes; every node and term is solved under these.
  std::vector<BoundChange> root_fixes_;

  int select_node() const {
    int best = -1;
    for (const Node& n : nodes_) {
      if (!n.open || n.branched) continue;
      if (best < 0) {
        best = n.id;
        continue;
      }
      const Node& b = nodes_[best];
      if (n.value < b.value - 1e-12 ||
          (std::abs(n.value - b.value) <= 1e-12 &&
           (n.n_frac < b.n_frac || (n.n_frac == b.n_frac && n.id < b.id))))
        best = n.id;
    }
    return best;
  }

  void apply_incumbent(double value) {
    if (incumbent_ && *incumbent_ <= value) return;
    incumbent_ = value;
    for (Node& n : nodes_) {
      if (!n.open || n.branched) continue;
      if (n.value >= *incumbent_ - 1e-9) {
        n.open = false;
        n.pruned = Pruned::Bound;
      }
    }
  }

  Pruned classify(const SimplexSolution& s, double* value) {
    if (s.status == SolveStatus::Infeasible) return Pruned::Infeasible;
    *value = s.objective_value;
    if (is_integral_solution(lp_, s.primal_values, cfg_.away_tol))
      return Pruned::Integral;
    if (incumbent_ && *value >= *incumbent_ - 1e-9) return Pruned::Bound;
    return Pruned::No;
  }

  // Returns true when the node was split into two children. A root-level
  // probe with one infeasible side instead tightens the global bounds,
  // re-solves the node, and probes again; the node may close in the process.
  bool branch(int node_id, std::vector<Cut>* one_sided) {
    int best_col = -1;
    SimplexSolution best_down, best_up;
    for (int round = 0; round < 16; ++round) {
      Node& node = nodes_[node_id];
      LinearProgram nlp = term_lp_of(node);
      std::vector<int> frac =
          fractional_integers(lp_, node.sol.primal_values, cfg_.away_tol);
      // Most fractional first: smallest distance of the fraction from 1/2.
      std::stable_sort(frac.begin(), frac.end(), [&](int a, int b) {
        double fa = node.sol.primal_values[a] - std::floor(node.sol.primal_values[a]);
        double fb = node.sol.primal_values[b] - std::floor(node.sol.primal_values[b]);
        double da = std::abs(fa - 0.5), db = std::abs(fb - 0.5);
        if (da != db) return da < db;
        return a < b;
      });
      int n_cand = std::min<int>((int)frac.size(), cfg_.strong_branch_candidates);

      Basis warm = basis_of(node.sol);
      best_col = -1;
      double best_score = -1.0;
      bool tightened = false;
      bool allow_tighten = one_sided && round + 1 < 16;
      for (int c = 0; c < n_cand && !tightened; ++c) {
        int col = frac[c];
        double xv = node.sol.primal_values[col];
        double fl = std::floor(xv), ce = std::ceil(xv);

        LinearProgram down = nlp;
        down.col_upper[col] = std::min(down.col_upper[col], fl);
        SimplexSolution sd = solve_with(down, &warm);
        LinearProgram up = nlp;
        up.col_lower[col] = std::max(up.col_lower[col], ce);
        SimplexSolution su = solve_with(up, &warm);

        if (allow_tighten) {
          if (sd.status == SolveStatus::Infeasible &&
              su.status != SolveStatus::Infeasible) {
            one_sided->push_back(one_sided_cut(lp_, col, false, ce));
            root_fixes_.push_back({col, false, ce});
            tightened = true;
          }
          if (su.status == SolveStatus::Infeasible &&
              sd.status != SolveStatus::Infeasible) {
            one_sided->push_back(one_sided_cut(lp_, col, true, fl));
            root_fixes_.push_back({col, true, fl});
            tightened = true;
          }
        }
        if (tightened) break;

        double gd = sd.status == SolveStatus::Infeasible
                        ? kLargeGain
                        : sd.objective_value - node.value;
        double gu = su.status == SolveStatus::Infeasible
                        ? kLargeGain
                        : su.objective_value - node.value;
        double score = std::max(gd, kScoreFloor) * std::max(gu, kScoreFloor);
        bool tie = std::abs(score - best_score) <= 1e-9 * std::max(1.0, best_score);
        if ((tie && col < best_col) || (!tie && score > best_score)) {
          best_score = score;
          best_col = col;
          best_down = std::move(sd);
          best_up = std::move(su);
        }
      }
      if (!tightened) break;

      SimplexSolution ns = solve_with(term_lp_of(node), &warm);
      double value = kInf;
      Pruned pr = classify(ns, &value);
      if (pr == Pruned::Infeasible) {
        node.pruned = pr;
        node.open = false;
        return false;
      }
      node.sol = std::move(ns);
      node.value = value;
      node.n_frac =
          (int)fractional_integers(lp_, node.sol.primal_values, cfg_.away_tol).size();
      if (pr != Pruned::No) {
        node.pruned = pr;
        node.open = false;
        if (pr == Pruned::Integral) apply_incumbent(node.value);
        return false;
      }
      best_col = -1;
    }
    if (best_col < 0) {
      nodes_[node_id].open = false;
      return false;
    }

    Node& node = nodes_[node_id];
    node.branched = true;
    node.open = false;
    double xv = node.sol.primal_values[best_col];

    auto make_child = [&](bool is_down, SimplexSolution&& sol) {
      Node child;
      child.bound_changes = node.bound_changes;
      if (is_down)
        child.bound_changes.push_back({best_col, true, std::floor(xv)});
      else
        child.bound_changes.push_back({best_col, false, std::ceil(xv)});
      double value = kInf;
      child.pruned = classify(sol, &value);
      child.value = value;
      if (child.pruned != Pruned::Infeasible) {
        child.sol = std::move(sol);
        child.n_frac =
            (int)fractional_integers(lp_, child.sol.primal_values, cfg_.away_tol)
                .size();
      }
      child.open = child.pruned == Pruned::No;
      return child;
    };

    Node down = make_child(true, std::move(best_down));
    Node up = make_child(false, std::move(best_up));
    // Lower-value child gets the smaller id; ties go to the down child.
    bool down_first = down.value <= up.value + 1e-12;
    Node& first = down_first ? down : up;
    Node& second = down_first ? up : down;
    first.id = (int)nodes_.size();
    nodes_.push_back(std::move(first));
    second.id = (int)nodes_.size();
    nodes_.push_back(std::move(second));

    for (int id : {(int)nodes_.size() - 2, (int)nodes_.size() - 1}) {
      Node& ch = nodes_[id];
      if (ch.pruned == Pruned::Integral) apply_incumbent(ch.value);
    }
    return true;
  }

  LinearProgram term_lp_of(const Node& n) const {
    Term t;
    t.bound_changes = root_fixes_;
    t.bound_changes.insert(t.bound_changes.end(), n.bound_changes.begin(),
                           n.bound_changes.end());
    return term_lp(lp_, t);
  }
};

}  // namespace

Disjunction build_partial_tree(const LinearProgram& lp, const SimplexSolution& root,
                               const TreeConfig& cfg) {
  TreeBuilder b(lp, root, cfg);
  return b.run();
}

Disjunction elementary_split(const LinearProgram& lp, const SimplexSolution& root,
                             int col) {
  double xv = root.primal_values[col];
  double fl = std::floor(xv), ce = std::ceil(xv);
  Disjunction d;
  d.source = "split:" + std::to_string(col);
  Basis warm = basis_of(root);

  auto add_term = [&](bool is_down) {
    Term t;
    t.id = (int)d.terms.size();
    t.bound_changes.push_back(is_down ? BoundChange{col, true, fl}
                                      : BoundChange{col, false, ce});
    LinearProgram tl = term_lp(lp, t);
    SimplexSolution s = solve_with(tl, &warm);
    if (s.status == SolveStatus::Infeasible) {
      t.pruned = Pruned::Infeasible;
    } else {
      t.value = s.objective_value;
      if (is_integral_solution(lp, s.primal_values, 1e-5)) t.pruned = Pruned::Integral;
      t.solution = std::move(s);
    }
    d.terms.push_back(std::move(t));
  };
  add_term(true);
  add_term(false);

  bool down_inf = d.terms[0].pruned == Pruned::Infeasible;
  bool up_inf = d.terms[1].pruned == Pruned::Infeasible;
  if (down_inf && !up_inf) d.one_sided_cuts.push_back(one_sided_cut(lp, col, false, ce));
  if (up_inf && !down_inf) d.one_sided_cuts.push_back(one_sided_cut(lp, col, true, fl));
  finalize(&d);
  return d;
}

Disjunction cross_disjunction(const LinearProgram& lp, const SimplexSolution& root,
                              int col_a, int col_b) {
  double xa = root.primal_values[col_a], xb = root.primal_values[col_b];
  Disjunction d;
  d.source = "cross:" + std::to_string(col_a) + "," + std::to_string(col_b);
  Basis warm = basis_of(root);

  for (int sa = 0; sa < 2; ++sa) {
    for (int sb = 0; sb < 2; ++sb) {
      Term t;
      t.id = (int)d.terms.size();
      t.bound_changes.push_back(sa == 0 ? BoundChange{col_a, true, std::floor(xa)}
                                        : BoundChange{col_a, false, std::ceil(xa)});
      t.bound_changes.push_back(sb == 0 ? BoundChange{col_b, true, std::floor(xb)}
                                        : BoundChange{col_b, false, std::ceil(xb)});
      LinearProgram tl = term_lp(lp, t);
      SimplexSolution s = solve_with(tl, &warm);
      if (s.status == SolveStatus::Infeasible) {
        t.pruned = Pruned::Infeasible;
      } else {
        t.value = s.objective_value;
        if (is_integral_solution(lp, s.primal_values, 1e-5))
          t.pruned = Pruned::Integral;
        t.solution = std::move(s);
      }
      d.terms.push_back(std::move(t));
    }
  }

  auto inf = [&](int i) { return d.terms[i].pruned == Pruned::Infeasible; };
  if (inf(0) && inf(1) && !(inf(2) && inf(3)))
    d.one_sided_cuts.push_back(one_sided_cut(lp, col_a, false, std::ceil(xa)));
  if (inf(2) && inf(3) && !(inf(0) && inf(1)))
    d.one_sided_cuts.push_back(one_sided_cut(lp, col_a, true, std::floor(xa)));
  if (inf(0) && inf(2) && !(inf(1) && inf(3)))
    d.one_sided_cuts.push_back(one_sided_cut(lp, col_b, false, std::ceil(xb)));
  if (inf(1) && inf(3) && !(inf(0) && inf(2)))
    d.one_sided_cuts.push_back(one_sided_cut(lp, col_b, true, std::floor(xb)));
  finalize(&d);
  return d;
}

std::string to_debug_json(const Disjunction& d) {
  nlohmann::json j;
  j["source"] = d.source;
  j["db"] = d.best_term_value;
  j["p_star"] = d.p_star_index;
  j["proved_optimality"] = d.proved_optimality;
  j["one_sided_cuts"] = d.one_sided_cuts.size();
  if (d.incumbent) j["incumbent"] = *d.incumbent;
  j["terms"] = nlohmann::json::array();
  for (const Term& t : d.terms) {
    nlohmann::json jt;
    jt["id"] = t.id;
    switch (t.pruned) {
      case Pruned::No: jt["pruned"] = "no"; break;
      case Pruned::Infeasible: jt["pruned"] = "infeasible"; break;
      case Pruned::Integral: jt["pruned"] = "integral"; break;
      case Pruned::Bound: jt["pruned"] = "bound"; break;
    }
    if (t.pruned != Pruned::Infeasible) jt["value"] = t.value;
    jt["bounds"] = nlohmann::json::array();
    for (const BoundChange& bc : t.bound_changes)
      jt["bounds"].push_back({{"col", bc.col},
                              {"side", bc.is_upper ? "upper" : "lower"},
                              {"value", bc.value}});
    j["terms"].push_back(std::move(jt));
  }
  return j.dump(2);
}

}  // namespace vpc
