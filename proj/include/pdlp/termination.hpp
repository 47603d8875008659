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

#ifndef PDLP_TERMINATION_HPP
#define PDLP_TERMINATION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "pdlp/errors.hpp"
#include "pdlp/pdhg.hpp"
#include "pdlp/problem.hpp"
#include "pdlp/sparse_matrix.hpp"

namespace pdlp {

struct KktReport {
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  double rel_primal_residual = 0.0;
  double rel_dual_residual = 0.0;
  double rel_gap = 0.0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  Vector reduced_costs;  // lambda

  double MaxRelative() const {
    return std::max({rel_primal_residual, rel_dual_residual, rel_gap});
  }
};

namespace internal {

// Part of r that the bound structure of variable j allows as a reduced cost:
// positive only with a finite lower bound, negative only with a finite upper.
inline double AllowedReducedCost(double r, double lower, double upper) {
  const bool has_lower = lower > -kInf;
  const bool has_upper = upper < kInf;
  if (has_lower && has_upper) return r;
  if (has_lower) return std::max(r, 0.0);
  if (has_upper) return std::min(r, 0.0);
  return 0.0;
}

// sum_{lambda>0} l lambda + sum_{lambda<0} u lambda
inline double BoundTerm(std::span<const double> lambda,
                        std::span<const double> lower,
                        std::span<const double> upper) {
  double sum = 0.0;
  for (size_t j = 0; j < lambda.size(); ++j) {
    if (lambda[j] > 0.0) sum += lower[j] * lambda[j];
    if (lambda[j] < 0.0) sum += upper[j] * lambda[j];
  }
  return sum;
}

}  // namespace internal

// Relative KKT error of (x, y) for the given (unscaled) problem:
//   primal residual  |(A x - b ; max(h - G x, 0))|_2
//   dual residual    |c - K^T y - lambda|_2 (+ any negative inequality dual)
//   gap              |c^T x - (q^T y + sum l lambda+ - sum u lambda-)|
// each divided by 1 + |q|_2, 1 + |c|_2 and 1 + |c^T x| + |dual obj|.
inline KktReport KktError(const SaddleForm& saddle, std::span<const double> x,
                          std::span<const double> y) {
  const int64_t n = saddle.num_variables();
  const int64_t m = saddle.num_constraints();
  if (static_cast<int64_t>(x.size()) != n ||
      static_cast<int64_t>(y.size()) != m) {
    throw Error(ErrorCode::kDimensionMismatch, "kkt point size");
  }
  KktReport rep;
  const Vector kx = MatVec(saddle.constraint_matrix, x);
  double primal_sq = 0.0;
  for (int64_t i = 0; i < m; ++i) {
    const double v = i < saddle.num_ineq ? std::max(saddle.rhs[i] - kx[i], 0.0)
                                         : kx[i] - saddle.rhs[i];
    primal_sq += v * v;
  }
  const Vector kty = MatVecTranspose(saddle.constraint_matrix, y);
  rep.reduced_costs.resize(n);
  double dual_sq = 0.0;
  for (int64_t j = 0; j < n; ++j) {
    const double r = saddle.objective[j] - kty[j];
    const double lambda = internal::AllowedReducedCost(
        r, saddle.lower_bounds[j], saddle.upper_bounds[j]);
    rep.reduced_costs[j] = lambda;
    dual_sq += (r - lambda) * (r - lambda);
  }
  for (int64_t i = 0; i < saddle.num_ineq; ++i) {
    if (y[i] < 0.0) dual_sq += y[i] * y[i];
  }
  rep.primal_residual = std::sqrt(primal_sq);
  rep.dual_residual = std::sqrt(dual_sq);
  rep.primal_objective = Dot(saddle.objective, x);
  rep.dual_objective =
      Dot(saddle.rhs, y) + internal::BoundTerm(rep.reduced_costs,
                                               saddle.lower_bounds,
                                               saddle.upper_bounds);
  rep.gap = std::abs(rep.primal_objective - rep.dual_objective);
  rep.rel_primal_residual = rep.primal_residual / (1.0 + Norm(saddle.rhs));
  rep.rel_dual_residual = rep.dual_residual / (1.0 + Norm(saddle.objective));
  rep.rel_gap = rep.gap / (1.0 + std::abs(rep.primal_objective) +
                           std::abs(rep.dual_objective));
  return rep;
}

struct TerminationCriteria {
  double tol_optimal = 1e-8;
  double tol_infeasible = 1e-10;
  int64_t iteration_limit = std::numeric_limits<int64_t>::max();
  double time_limit_seconds = kInf;
  int64_t check_interval = 64;

  void Validate() const {
    if (!(tol_optimal > 0.0) || !(tol_infeasible > 0.0) ||
        iteration_limit < 0 || !(time_limit_seconds > 0.0) ||
        check_interval < 1) {
      throw Error(ErrorCode::kConfigInvalid, "termination criteria");
    }
  }
};

// All three relative errors at or below the tolerance (inclusive).
inline bool CheckOptimal(const KktReport& report,
                         const TerminationCriteria& criteria) {
  return report.rel_primal_residual <= criteria.tol_optimal &&
         report.rel_dual_residual <= criteria.tol_optimal &&
         report.rel_gap <= criteria.tol_optimal;
}

enum class CertificateKind { kDifference, kNormalized };

// A direction estimate of the infimal displacement vector. The primal part is
// a dual-infeasibility (unboundedness) ray candidate, the dual part a
// primal-infeasibility (Farkas) ray candidate.
struct CertificateCandidate {
  CertificateKind kind = CertificateKind::kDifference;
  Vector x;
  Vector y;
  int64_t source_iteration = 0;
};

// Difference candidate z^{k+1} - z^k and normalized candidate (z^k - z^0)/k,
// where `last` is z^k (k = `iterations`) and `previous` the iterate before it.
inline std::vector<CertificateCandidate> ExtractCertificates(
    const PrimalDualPoint& last, const PrimalDualPoint& previous,
    const PrimalDualPoint& initial, int64_t iterations) {
  if (iterations < 1) {
    throw Error(ErrorCode::kNonPositiveInput,
                "certificate extraction needs at least one iteration");
  }
  CertificateCandidate diff{CertificateKind::kDifference, last.x, last.y,
                            iterations};
  for (size_t j = 0; j < diff.x.size(); ++j) diff.x[j] -= previous.x[j];
  for (size_t i = 0; i < diff.y.size(); ++i) diff.y[i] -= previous.y[i];
  CertificateCandidate norm{CertificateKind::kNormalized, last.x, last.y,
                            iterations};
  const double k = static_cast<double>(iterations);
  for (size_t j = 0; j < norm.x.size(); ++j) {
    norm.x[j] = (norm.x[j] - initial.x[j]) / k;
  }
  for (size_t i = 0; i < norm.y.size(); ++i) {
    norm.y[i] = (norm.y[i] - initial.y[i]) / k;
  }
  return {std::move(diff), std::move(norm)};
}

struct CertificateVerdict {
  bool valid = false;
  // Objective of the unit-normalized ray (q^T y + bound terms for a Farkas
  // ray, -c^T d for an unbounded ray); positive means improving.
  double margin = 0.0;
  // Largest violation of the ray's feasibility conditions.
  double residual = 0.0;
};

// Farkas test for primal infeasibility on the unit-normalized ray y:
// y_{ineq} >= -tol, |(-K^T y) - lambda|_inf <= tol with lambda the allowed part
// of -K^T y, and q^T y + sum l lambda+ + sum u lambda- >= tol max(1, |q|_2).
inline CertificateVerdict CheckPrimalInfeasible(const SaddleForm& saddle,
                                                std::span<const double> ray,
                                                double tol) {
  if (static_cast<int64_t>(ray.size()) != saddle.num_constraints()) {
    throw Error(ErrorCode::kDimensionMismatch, "dual ray size");
  }
  const double norm = Norm(ray);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::kNotACertificate, "zero or non-finite dual ray");
  }
  Vector y(ray.begin(), ray.end());
  for (double& v : y) v /= norm;
  CertificateVerdict out;
  for (int64_t i = 0; i < saddle.num_ineq; ++i) {
    out.residual = std::max(out.residual, -y[i]);
  }
  const Vector kty = MatVecTranspose(saddle.constraint_matrix, y);
  Vector lambda(kty.size());
  for (size_t j = 0; j < kty.size(); ++j) {
    const double r = -kty[j];
    lambda[j] = internal::AllowedReducedCost(r, saddle.lower_bounds[j],
                                             saddle.upper_bounds[j]);
    out.residual = std::max(out.residual, std::abs(r - lambda[j]));
  }
  out.margin = Dot(saddle.rhs, y) +
               internal::BoundTerm(lambda, saddle.lower_bounds,
                                   saddle.upper_bounds);
  out.valid = out.residual <= tol &&
              out.margin >= tol * std::max(1.0, Norm(saddle.rhs));
  return out;
}

// Unboundedness test on the unit-normalized ray d: A d = 0, G d >= 0, d stays
// inside the recession cone of [l, u], and c^T d <= -tol max(1, |c|_2); each
// condition with tolerance tol.
inline CertificateVerdict CheckDualInfeasible(const SaddleForm& saddle,
                                              std::span<const double> ray,
                                              double tol) {
  if (static_cast<int64_t>(ray.size()) != saddle.num_variables()) {
    throw Error(ErrorCode::kDimensionMismatch, "primal ray size");
  }
  const double norm = Norm(ray);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::kNotACertificate, "zero or non-finite primal ray");
  }
  Vector d(ray.begin(), ray.end());
  for (double& v : d) v /= norm;
  CertificateVerdict out;
  const Vector kd = MatVec(saddle.constraint_matrix, d);
  for (int64_t i = 0; i < saddle.num_constraints(); ++i) {
    const double violation =
        i < saddle.num_ineq ? -kd[i] : std::abs(kd[i]);
    out.residual = std::max(out.residual, violation);
  }
  for (size_t j = 0; j < d.size(); ++j) {
    const bool has_lower = saddle.lower_bounds[j] > -kInf;
    const bool has_upper = saddle.upper_bounds[j] < kInf;
    double violation = 0.0;
    if (has_lower && has_upper) {
      violation = std::abs(d[j]);
    } else if (has_lower) {
      violation = -d[j];
    } else if (has_upper) {
      violation = d[j];
    }
    out.residual = std::max(out.residual, violation);
  }
  out.margin = -Dot(saddle.objective, d);
  out.valid = out.residual <= tol &&
              out.margin >= tol * std::max(1.0, Norm(saddle.objective));
  return out;
}

}  // namespace pdlp

#endif  // PDLP_TERMINATION_HPP
