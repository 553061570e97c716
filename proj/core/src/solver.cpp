/*
 * Copyright 2026 The Airslice Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "airslice/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace airslice {
namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kFeasTol = 1e-9;

/// Rows of the constraint system A t <= rhs. Every entry of A is 0 or 1.
struct ConstraintRows {
  std::vector<std::vector<int>> members;  // variable indices per row
  std::vector<double> rhs;
};

ConstraintRows build_rows(const AllocationProblem& p) {
  const int n_sub = p.n_substrates();
  const int n_sl = p.n_slices;
  auto var = [n_sl](int k, int j) { return k * n_sl + j; };

  ConstraintRows rows;
  for (int k = 0; k < n_sub; ++k) {
    std::vector<int> m(n_sl);
    for (int j = 0; j < n_sl; ++j) m[j] = var(k, j);
    rows.members.push_back(std::move(m));
    rows.rhs.push_back(1.0);
  }
  auto add_group_rows = [&](SubstrateKind kind, const std::vector<std::optional<double>>& quota) {
    if (quota.empty()) return;
    for (int j = 0; j < n_sl; ++j) {
      if (!quota[j]) continue;
      std::vector<int> m;
      for (int k = 0; k < n_sub; ++k) {
        if (p.substrates[k].kind == kind) m.push_back(var(k, j));
      }
      if (m.empty()) continue;
      rows.members.push_back(std::move(m));
      rows.rhs.push_back(*quota[j]);
    }
  };
  add_group_rows(SubstrateKind::ScheduledBasestation, p.quota_scheduled);
  add_group_rows(SubstrateKind::ContentionAccessPoint, p.quota_contention);
  if (!p.bid.empty()) {
    for (int j = 0; j < n_sl; ++j) {
      if (!p.bid[j]) continue;
      std::vector<int> m;
      for (int k = 0; k < n_sub; ++k) m.push_back(var(k, j));
      rows.members.push_back(std::move(m));
      rows.rhs.push_back(*p.bid[j]);
    }
  }
  return rows;
}

std::vector<double> objective_coeffs(const AllocationProblem& p) {
  std::vector<double> c(p.n_variables());
  for (int k = 0; k < p.n_substrates(); ++k) {
    for (int j = 0; j < p.n_slices; ++j) {
      c[k * p.n_slices + j] = p.price_weight[k] * p.utility_coeff.at(k, j);
    }
  }
  return c;
}

/// Primal simplex, maximization, slack starting basis, Bland's rule.
/// The caller guarantees rhs >= 0 (problem already shifted by its lower
/// bounds), so the slack basis is feasible and no phase 1 is needed.
class SimplexTableau {
 public:
  SimplexTableau(const ConstraintRows& rows, const std::vector<double>& cost)
      : n_(static_cast<int>(cost.size())),
        m_(static_cast<int>(rows.rhs.size())),
        cost_(cost) {
    cost_.resize(n_ + m_, 0.0);
    tableau_.assign(m_, std::vector<double>(n_ + m_ + 1, 0.0));
    basis_.resize(m_);
    for (int r = 0; r < m_; ++r) {
      for (int v : rows.members[r]) tableau_[r][v] = 1.0;
      tableau_[r][n_ + r] = 1.0;
      tableau_[r].back() = rows.rhs[r];
      basis_[r] = n_ + r;
    }
  }

  void run() {
    // Bland's rule terminates without cycling; the polytope is a subset of
    // [0,1]^n so the objective cannot be unbounded.
    for (;;) {
      const int entering = pick_entering();
      if (entering < 0) return;
      const int leaving = pick_leaving(entering);
      if (leaving < 0) {
        throw std::logic_error("simplex: unbounded direction in a bounded polytope");
      }
      pivot(leaving, entering);
    }
  }

  /// Value of structural variable i in the current basic solution.
  double value_of(int i) const {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] == i) return std::max(0.0, tableau_[r].back());
    }
    return 0.0;
  }

 private:
  int pick_entering() const {
    for (int j = 0; j < n_ + m_; ++j) {
      if (is_basic(j)) continue;
      double reduced = cost_[j];
      for (int r = 0; r < m_; ++r) {
        if (cost_[basis_[r]] != 0.0) reduced -= cost_[basis_[r]] * tableau_[r][j];
      }
      if (reduced > kPivotTol) return j;
    }
    return -1;
  }

  int pick_leaving(int entering) const {
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < m_; ++r) {
      const double a = tableau_[r][entering];
      if (a > kPivotTol) best_ratio = std::min(best_ratio, tableau_[r].back() / a);
    }
    if (!std::isfinite(best_ratio)) return -1;
    int leaving = -1;
    for (int r = 0; r < m_; ++r) {
      const double a = tableau_[r][entering];
      if (a <= kPivotTol) continue;
      if (tableau_[r].back() / a > best_ratio + kPivotTol) continue;
      if (leaving < 0 || basis_[r] < basis_[leaving]) leaving = r;
    }
    return leaving;
  }

  bool is_basic(int j) const {
    return std::find(basis_.begin(), basis_.end(), j) != basis_.end();
  }

  void pivot(int row, int col) {
    auto& pr = tableau_[row];
    const double p = pr[col];
    for (double& v : pr) v /= p;
    for (int r = 0; r < m_; ++r) {
      if (r == row) continue;
      const double f = tableau_[r][col];
      if (f == 0.0) continue;
      for (int j = 0; j <= n_ + m_; ++j) tableau_[r][j] -= f * pr[j];
    }
    basis_[row] = col;
  }

  int n_;
  int m_;
  std::vector<double> cost_;
  std::vector<std::vector<double>> tableau_;
  std::vector<int> basis_;
};

}  // namespace

SolveReport solve(const AllocationProblem& problem) {
  validate_problem(problem);
  const int n_sub = problem.n_substrates();
  const int n_sl = problem.n_slices;
  const int n = problem.n_variables();

  ConstraintRows rows = build_rows(problem);
  std::vector<double> lower(n);
  for (int k = 0; k < n_sub; ++k) {
    for (int j = 0; j < n_sl; ++j) lower[k * n_sl + j] = problem.minima.at(k, j);
  }

  // Shift out the lower bounds. All constraint coefficients are nonnegative,
  // so a negative shifted rhs means even the minima violate that row.
  for (size_t r = 0; r < rows.rhs.size(); ++r) {
    double used = 0.0;
    for (int v : rows.members[r]) used += lower[v];
    rows.rhs[r] -= used;
    if (rows.rhs[r] < -kFeasTol) {
      return {AllocationMatrix(n_sub, n_sl), 0.0, SolveStatus::Infeasible};
    }
    rows.rhs[r] = std::max(0.0, rows.rhs[r]);
  }

  SimplexTableau tableau(rows, objective_coeffs(problem));
  tableau.run();

  AllocationMatrix t(n_sub, n_sl);
  for (int k = 0; k < n_sub; ++k) {
    for (int j = 0; j < n_sl; ++j) {
      t.at(k, j) = lower[k * n_sl + j] + tableau.value_of(k * n_sl + j);
    }
  }
  if (std::string why; !allocation_satisfies(t, problem, kFeasTol, &why)) {
    throw std::logic_error("simplex produced an infeasible optimum: " + why);
  }
  return {t, revenue_of(t, problem), SolveStatus::Optimal};
}

SolveReport brute_force_solve(const AllocationProblem& problem, double grid_step) {
  validate_problem(problem);
  if (!(grid_step > 0.0) || std::abs(1.0 / grid_step - std::round(1.0 / grid_step)) > 1e-9) {
    throw Error(Errc::ValidationFailed, "grid_step must evenly divide 1");
  }
  const int n_sub = problem.n_substrates();
  const int n_sl = problem.n_slices;
  const int n = problem.n_variables();
  if (n > 6) {
    throw Error(Errc::TooManyVariables,
                "oracle handles at most 6 decision variables, got " + std::to_string(n));
  }

  constexpr double kTol = 1e-9;
  constexpr double kTieEps = 1e-12;
  const double inf = std::numeric_limits<double>::infinity();

  // Variable order is the flattened (substrate-major) order; ascending
  // candidate values per variable keep the enumeration lexicographic.
  std::vector<double> lower(n), weight(n);
  for (int k = 0; k < n_sub; ++k) {
    for (int j = 0; j < n_sl; ++j) {
      lower[k * n_sl + j] = problem.minima.at(k, j);
      weight[k * n_sl + j] = problem.price_weight[k] * problem.utility_coeff.at(k, j);
    }
  }
  std::vector<std::vector<double>> candidates(n);
  for (int i = 0; i < n; ++i) {
    for (int step = 0;; ++step) {
      const double v = lower[i] + step * grid_step;
      if (v > 1.0 + kTieEps) break;
      candidates[i].push_back(std::min(v, 1.0));
    }
  }

  // Remaining budgets per constraint, plus the delta mass that unassigned
  // variables of the same constraint will still require (suffix reserves).
  std::vector<double> cap_sub(n_sub, 1.0), cap_bid(n_sl, inf);
  std::vector<double> cap_qs(n_sl, inf), cap_qc(n_sl, inf);
  for (int j = 0; j < n_sl; ++j) {
    if (!problem.bid.empty() && problem.bid[j]) cap_bid[j] = *problem.bid[j];
    if (!problem.quota_scheduled.empty() && problem.quota_scheduled[j]) {
      cap_qs[j] = *problem.quota_scheduled[j];
    }
    if (!problem.quota_contention.empty() && problem.quota_contention[j]) {
      cap_qc[j] = *problem.quota_contention[j];
    }
  }
  auto kind_of = [&](int i) { return problem.substrates[i / n_sl].kind; };
  // rsv_*[i] = delta mass that variables after i in the same constraint row
  // still require; assigning more than (remaining - reserve) now makes every
  // completion infeasible.
  auto suffix_reserve = [&](int i, auto in_row) {
    double s = 0.0;
    for (int v = i + 1; v < n; ++v) {
      if (in_row(v)) s += lower[v];
    }
    return s;
  };
  std::vector<double> rsv_sub(n), rsv_bid(n), rsv_qs(n), rsv_qc(n);
  for (int i = 0; i < n; ++i) {
    const int k = i / n_sl, j = i % n_sl;
    rsv_sub[i] = suffix_reserve(i, [&](int v) { return v / n_sl == k; });
    rsv_bid[i] = suffix_reserve(i, [&](int v) { return v % n_sl == j; });
    rsv_qs[i] = suffix_reserve(i, [&](int v) {
      return v % n_sl == j && kind_of(v) == SubstrateKind::ScheduledBasestation;
    });
    rsv_qc[i] = suffix_reserve(i, [&](int v) {
      return v % n_sl == j && kind_of(v) == SubstrateKind::ContentionAccessPoint;
    });
  }
  // Best weighted coefficient among variables >= i of each substrate, for
  // the admissible objective bound.
  std::vector<double> max_weight_suffix(n_sub * (n + 1), 0.0);
  for (int k = 0; k < n_sub; ++k) {
    for (int i = n - 1; i >= 0; --i) {
      double best = max_weight_suffix[k * (n + 1) + i + 1];
      if (i / n_sl == k) best = std::max(best, weight[i]);
      max_weight_suffix[k * (n + 1) + i] = best;
    }
  }

  std::vector<double> current(n, 0.0), best_alloc;
  double best_obj = -inf;
  bool found = false;

  auto upper_bound = [&](int i, double obj) {
    double ub = obj;
    for (int k = 0; k < n_sub; ++k) {
      ub += std::max(0.0, cap_sub[k]) * max_weight_suffix[k * (n + 1) + i];
    }
    return ub;
  };

  auto dfs = [&](auto&& self, int i, double obj) -> void {
    if (i == n) {
      if (!found || obj > best_obj + kTieEps) {
        best_obj = obj;
        best_alloc = current;
        found = true;
      }
      return;
    }
    if (found && upper_bound(i, obj) < best_obj - kTieEps) return;
    const int k = i / n_sl, j = i % n_sl;
    const bool scheduled = kind_of(i) == SubstrateKind::ScheduledBasestation;
    double limit = cap_sub[k] - rsv_sub[i];
    limit = std::min(limit, cap_bid[j] - rsv_bid[i]);
    limit = std::min(limit, scheduled ? cap_qs[j] - rsv_qs[i] : cap_qc[j] - rsv_qc[i]);
    for (double v : candidates[i]) {
      if (v > limit + kTol) break;
      current[i] = v;
      cap_sub[k] -= v;
      cap_bid[j] -= v;
      (scheduled ? cap_qs[j] : cap_qc[j]) -= v;
      self(self, i + 1, obj + weight[i] * v);
      cap_sub[k] += v;
      cap_bid[j] += v;
      (scheduled ? cap_qs[j] : cap_qc[j]) += v;
    }
  };
  dfs(dfs, 0, 0.0);

  if (!found) {
    return {AllocationMatrix(n_sub, n_sl), 0.0, SolveStatus::Infeasible};
  }
  AllocationMatrix t(n_sub, n_sl);
  for (int i = 0; i < n; ++i) t.at(i / n_sl, i % n_sl) = best_alloc[i];
  return {t, best_obj, SolveStatus::Optimal};
}

}  // namespace airslice
