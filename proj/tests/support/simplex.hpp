// Copyright 2026 The pdlp-lite Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense two-phase simplex with Bland's rule. Test oracle only: exact enough
// for Netlib-small sizes, no attempt at speed.

#ifndef PDLP_TESTS_SUPPORT_SIMPLEX_HPP
#define PDLP_TESTS_SUPPORT_SIMPLEX_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "pdlp/problem.hpp"

namespace pdlp::testing {

enum class SimplexStatus { kOptimal, kInfeasible, kUnbounded };

struct SimplexResult {
  SimplexStatus status = SimplexStatus::kInfeasible;
  double objective = 0.0;  // minimization form, offset excluded
  std::vector<double> x;
};

namespace detail {

// min c^T v  s.t.  M v = rhs, v >= 0.
class Tableau {
 public:
  Tableau(std::vector<std::vector<double>> m, std::vector<double> rhs,
          std::vector<double> cost)
      : rows_(static_cast<int>(m.size())),
        cols_(static_cast<int>(cost.size())),
        cost_(std::move(cost)) {
    for (int i = 0; i < rows_; ++i) {
      if (rhs[i] < 0.0) {
        for (double& v : m[i]) v = -v;
        rhs[i] = -rhs[i];
      }
    }
    // Columns: structural [0, cols), artificials [cols, cols + rows).
    t_.assign(rows_ + 1, std::vector<double>(cols_ + rows_ + 1, 0.0));
    basis_.resize(rows_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) t_[i][j] = m[i][j];
      t_[i][cols_ + i] = 1.0;
      t_[i].back() = rhs[i];
      basis_[i] = cols_ + i;
    }
  }

  SimplexResult Solve() {
    SimplexResult res;
    // Phase 1: minimize the sum of artificials.
    std::vector<double> phase1(cols_ + rows_, 0.0);
    for (int i = 0; i < rows_; ++i) phase1[cols_ + i] = 1.0;
    SetObjective(phase1);
    if (!Iterate(cols_ + rows_)) return res;  // cannot happen in phase 1
    if (-t_[rows_].back() > 1e-7 * (1.0 + RhsScale())) {
      res.status = SimplexStatus::kInfeasible;
      return res;
    }
    DriveOutArtificials();
    std::vector<double> phase2(cols_ + rows_, 0.0);
    for (int j = 0; j < cols_; ++j) phase2[j] = cost_[j];
    SetObjective(phase2);
    if (!Iterate(cols_)) {
      res.status = SimplexStatus::kUnbounded;
      return res;
    }
    res.status = SimplexStatus::kOptimal;
    res.x.assign(cols_, 0.0);
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) res.x[basis_[i]] = t_[i].back();
    }
    res.objective = 0.0;
    for (int j = 0; j < cols_; ++j) res.objective += cost_[j] * res.x[j];
    return res;
  }

 private:
  static constexpr double kPivotTol = 1e-9;
  static constexpr double kCostTol = 1e-9;

  double RhsScale() const {
    double s = 0.0;
    for (int i = 0; i < rows_; ++i) s = std::max(s, std::abs(t_[i].back()));
    return s;
  }

  void SetObjective(const std::vector<double>& c) {
    std::vector<double>& z = t_[rows_];
    std::fill(z.begin(), z.end(), 0.0);
    for (size_t j = 0; j < c.size(); ++j) z[j] = c[j];
    for (int i = 0; i < rows_; ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      for (size_t j = 0; j < z.size(); ++j) z[j] -= cb * t_[i][j];
    }
  }

  void Pivot(int r, int c) {
    const double p = t_[r][c];
    for (double& v : t_[r]) v /= p;
    for (int i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = t_[i][c];
      if (f == 0.0) continue;
      for (size_t j = 0; j < t_[i].size(); ++j) t_[i][j] -= f * t_[r][j];
      t_[i][c] = 0.0;
    }
    basis_[r] = c;
  }

  // Entering columns restricted to [0, limit). False when unbounded.
  // Dantzig pricing, switching to Bland's rule during runs of degenerate
  // pivots so that cycling cannot persist.
  bool Iterate(int limit) {
    int degenerate_run = 0;
    while (true) {
      const bool bland = degenerate_run > 50;
      int enter = -1;
      double most_negative = -kCostTol;
      for (int j = 0; j < limit; ++j) {
        if (t_[rows_][j] < most_negative) {
          enter = j;
          if (bland) break;
          most_negative = t_[rows_][j];
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows_; ++i) {
        if (t_[i][enter] <= kPivotTol) continue;
        const double ratio = std::max(t_[i].back(), 0.0) / t_[i][enter];
        const bool tie = leave >= 0 && ratio <= best + 1e-12;
        if (ratio < best - 1e-12 ||
            (tie && (bland ? basis_[i] < basis_[leave]
                           : t_[i][enter] > t_[leave][enter]))) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      degenerate_run = best <= 1e-12 ? degenerate_run + 1 : 0;
      Pivot(leave, enter);
    }
  }

  void DriveOutArtificials() {
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) continue;
      for (int j = 0; j < cols_; ++j) {
        if (std::abs(t_[i][j]) > kPivotTol) {
          Pivot(i, j);
          break;
        }
      }
      // A row with no structural entry is redundant; its artificial stays at 0.
    }
  }

  int rows_;
  int cols_;
  std::vector<double> cost_;
  std::vector<std::vector<double>> t_;
  std::vector<int> basis_;
};

}  // namespace detail

// Solves the LP by rewriting it in standard form: each variable is shifted to
// its finite lower bound, reflected through a lone finite upper bound, or
// split when free; finite boxes add a slack row; G rows get surplus columns.
inline SimplexResult SolveDense(const LpProblem& p) {
  const int64_t n = p.num_variables();
  const double inf = std::numeric_limits<double>::infinity();
  // Each original variable maps to x_j = offset_j + sum_k coef_k v_{col_k}.
  struct Map {
    double offset = 0.0;
    std::vector<std::pair<int, double>> terms;
  };
  std::vector<Map> map(n);
  int ncols = 0;
  std::vector<std::pair<int, double>> box_rows;  // (column, width)
  for (int64_t j = 0; j < n; ++j) {
    const double l = p.lower_bounds[j];
    const double u = p.upper_bounds[j];
    if (l > -inf) {
      map[j].offset = l;
      map[j].terms.push_back({ncols, 1.0});
      if (u < inf) box_rows.push_back({ncols, u - l});
      ++ncols;
    } else if (u < inf) {
      map[j].offset = u;
      map[j].terms.push_back({ncols++, -1.0});
    } else {
      map[j].terms.push_back({ncols++, 1.0});
      map[j].terms.push_back({ncols++, -1.0});
    }
  }
  const int n_struct = ncols;
  const int m1 = static_cast<int>(p.num_ineq());
  const int m2 = static_cast<int>(p.num_eq());
  const int total_cols = n_struct + m1 + static_cast<int>(box_rows.size());
  const int total_rows = m1 + m2 + static_cast<int>(box_rows.size());
  std::vector<std::vector<double>> m(total_rows,
                                     std::vector<double>(total_cols, 0.0));
  std::vector<double> rhs(total_rows, 0.0);
  auto add_row = [&](int row, const SparseMatrix& mat, int64_t i, double b) {
    double shift = 0.0;
    for (int64_t k = mat.row_start()[i]; k < mat.row_start()[i + 1]; ++k) {
      const int64_t j = mat.col_index()[k];
      const double a = mat.values()[k];
      shift += a * map[j].offset;
      for (const auto& [col, coef] : map[j].terms) m[row][col] += a * coef;
    }
    rhs[row] = b - shift;
  };
  for (int i = 0; i < m1; ++i) {
    add_row(i, p.ineq_matrix, i, p.ineq_rhs[i]);
    m[i][n_struct + i] = -1.0;
  }
  for (int i = 0; i < m2; ++i) add_row(m1 + i, p.eq_matrix, i, p.eq_rhs[i]);
  for (size_t k = 0; k < box_rows.size(); ++k) {
    const int row = m1 + m2 + static_cast<int>(k);
    m[row][box_rows[k].first] = 1.0;
    m[row][n_struct + m1 + static_cast<int>(k)] = 1.0;
    rhs[row] = box_rows[k].second;
  }
  std::vector<double> cost(total_cols, 0.0);
  double cost_shift = 0.0;
  for (int64_t j = 0; j < n; ++j) {
    cost_shift += p.objective[j] * map[j].offset;
    for (const auto& [col, coef] : map[j].terms) {
      cost[col] += p.objective[j] * coef;
    }
  }
  SimplexResult r =
      detail::Tableau(std::move(m), std::move(rhs), std::move(cost)).Solve();
  if (r.status != SimplexStatus::kOptimal) return r;
  std::vector<double> x(n, 0.0);
  for (int64_t j = 0; j < n; ++j) {
    x[j] = map[j].offset;
    for (const auto& [col, coef] : map[j].terms) x[j] += coef * r.x[col];
  }
  r.x = std::move(x);
  r.objective += cost_shift;
  return r;
}

}  // namespace pdlp::testing

#endif  // PDLP_TESTS_SUPPORT_SIMPLEX_HPP
