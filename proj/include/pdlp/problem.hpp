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

#ifndef PDLP_PROBLEM_HPP
#define PDLP_PROBLEM_HPP

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pdlp/errors.hpp"
#include "pdlp/sparse_matrix.hpp"

namespace pdlp {

// General-form LP
//
//   minimize    c^T x + objective_offset
//   subject to  G x >= h
//               A x  = b
//               l <= x <= u
//
// Maximization inputs are negated at ingestion (`maximize` records the
// original sense so reports can restore the sign). Bounds use +-kInf for
// missing sides.
struct LpProblem {
  std::string name;
  Vector objective;
  SparseMatrix ineq_matrix;
  Vector ineq_rhs;
  SparseMatrix eq_matrix;
  Vector eq_rhs;
  Vector lower_bounds;
  Vector upper_bounds;
  double objective_offset = 0.0;
  bool maximize = false;
  std::vector<std::string> variable_names;
  std::vector<std::string> ineq_row_names;
  std::vector<std::string> eq_row_names;

  int64_t num_variables() const {
    return static_cast<int64_t>(objective.size());
  }
  int64_t num_ineq() const { return static_cast<int64_t>(ineq_rhs.size()); }
  int64_t num_eq() const { return static_cast<int64_t>(eq_rhs.size()); }

  // Objective value in the user's original sense.
  double ReportedObjective(double internal_value) const {
    const double v = internal_value + objective_offset;
    return maximize ? -v : v;
  }
};

class ValidatedProblem;
inline ValidatedProblem Validate(LpProblem problem);

// An LpProblem that passed Validate(). Only Validate() can create one.
class ValidatedProblem {
 public:
  const LpProblem& problem() const { return problem_; }

 private:
  explicit ValidatedProblem(LpProblem p) : problem_(std::move(p)) {}
  friend ValidatedProblem Validate(LpProblem problem);

  LpProblem problem_;
};

// Checks every invariant and reports all violations in one Error.
inline ValidatedProblem Validate(LpProblem problem) {
  std::vector<std::pair<ErrorCode, std::string>> issues;
  const int64_t n = problem.num_variables();
  auto dim = [&](bool ok, const std::string& what) {
    if (!ok) issues.emplace_back(ErrorCode::kDimensionMismatch, what);
  };
  dim(problem.ineq_matrix.cols() == n || problem.ineq_matrix.rows() == 0,
      "inequality matrix has " + std::to_string(problem.ineq_matrix.cols()) +
          " columns, objective has " + std::to_string(n) + " entries");
  dim(problem.eq_matrix.cols() == n || problem.eq_matrix.rows() == 0,
      "equality matrix has " + std::to_string(problem.eq_matrix.cols()) +
          " columns, objective has " + std::to_string(n) + " entries");
  dim(problem.ineq_matrix.rows() == problem.num_ineq(),
      "inequality matrix has " + std::to_string(problem.ineq_matrix.rows()) +
          " rows, rhs has " + std::to_string(problem.num_ineq()));
  dim(problem.eq_matrix.rows() == problem.num_eq(),
      "equality matrix has " + std::to_string(problem.eq_matrix.rows()) +
          " rows, rhs has " + std::to_string(problem.num_eq()));
  dim(static_cast<int64_t>(problem.lower_bounds.size()) == n,
      "lower bounds length " + std::to_string(problem.lower_bounds.size()));
  dim(static_cast<int64_t>(problem.upper_bounds.size()) == n,
      "upper bounds length " + std::to_string(problem.upper_bounds.size()));
  dim(problem.variable_names.empty() ||
          static_cast<int64_t>(problem.variable_names.size()) == n,
      "variable name count");

  auto finite = [&](std::span<const double> v, const std::string& what) {
    for (double e : v) {
      if (!std::isfinite(e)) {
        issues.emplace_back(ErrorCode::kNonFiniteData, what);
        return;
      }
    }
  };
  finite(problem.objective, "objective");
  finite(problem.ineq_rhs, "inequality rhs");
  finite(problem.eq_rhs, "equality rhs");
  finite(problem.ineq_matrix.values(), "inequality matrix");
  finite(problem.eq_matrix.values(), "equality matrix");
  if (!std::isfinite(problem.objective_offset)) {
    issues.emplace_back(ErrorCode::kNonFiniteData, "objective offset");
  }
  if (problem.lower_bounds.size() == problem.upper_bounds.size()) {
    for (size_t i = 0; i < problem.lower_bounds.size(); ++i) {
      const double l = problem.lower_bounds[i];
      const double u = problem.upper_bounds[i];
      if (std::isnan(l) || std::isnan(u) || l == kInf || u == -kInf) {
        issues.emplace_back(ErrorCode::kNonFiniteData,
                            "bound of variable " + std::to_string(i));
      } else if (l > u) {
        issues.emplace_back(ErrorCode::kInconsistentBounds,
                            "variable " + std::to_string(i) + ": lower " +
                                std::to_string(l) + " > upper " +
                                std::to_string(u));
      }
    }
  }
  if (!issues.empty()) throw Error(std::move(issues));
  // Row-less blocks may have been built without a column count.
  if (problem.ineq_matrix.cols() != n) problem.ineq_matrix = SparseMatrix(0, n);
  if (problem.eq_matrix.cols() != n) problem.eq_matrix = SparseMatrix(0, n);
  return ValidatedProblem(std::move(problem));
}

// min_{x in X} max_{y in Y} L(x, y) = c^T x - y^T K x + q^T y with
// K = [G; A], q = [h; b], X = [l, u], Y = {y : y_{0..m1-1} >= 0}.
struct SaddleForm {
  SparseMatrix constraint_matrix;  // K
  Vector rhs;                      // q
  int64_t num_ineq = 0;            // m1
  Vector objective;                // c
  Vector lower_bounds;
  Vector upper_bounds;
  double objective_offset = 0.0;

  int64_t num_variables() const {
    return static_cast<int64_t>(objective.size());
  }
  int64_t num_constraints() const { return constraint_matrix.rows(); }

  SparseMatrix IneqBlock() const {
    return constraint_matrix.RowBlock(0, num_ineq);
  }
  SparseMatrix EqBlock() const {
    return constraint_matrix.RowBlock(num_ineq, num_constraints() - num_ineq);
  }
};

inline SaddleForm ToSaddle(const ValidatedProblem& validated) {
  const LpProblem& p = validated.problem();
  SaddleForm s;
  s.constraint_matrix = SparseMatrix::VStack(p.ineq_matrix, p.eq_matrix);
  s.rhs = p.ineq_rhs;
  s.rhs.insert(s.rhs.end(), p.eq_rhs.begin(), p.eq_rhs.end());
  s.num_ineq = p.num_ineq();
  s.objective = p.objective;
  s.lower_bounds = p.lower_bounds;
  s.upper_bounds = p.upper_bounds;
  s.objective_offset = p.objective_offset;
  return s;
}

// c^T x - y^T K x + q^T y. The objective offset is not included.
inline double Lagrangian(const SaddleForm& saddle, std::span<const double> x,
                         std::span<const double> y) {
  if (static_cast<int64_t>(x.size()) != saddle.num_variables() ||
      static_cast<int64_t>(y.size()) != saddle.num_constraints()) {
    throw Error(ErrorCode::kDimensionMismatch, "lagrangian point size");
  }
  const Vector kx = MatVec(saddle.constraint_matrix, x);
  return Dot(saddle.objective, x) - Dot(y, kx) + Dot(saddle.rhs, y);
}

}  // namespace pdlp

#endif  // PDLP_PROBLEM_HPP
