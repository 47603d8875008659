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

#ifndef PDLP_PDHG_HPP
#define PDLP_PDHG_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>

#include "pdlp/errors.hpp"
#include "pdlp/problem.hpp"
#include "pdlp/sparse_matrix.hpp"

namespace pdlp {

struct PrimalDualPoint {
  Vector x;
  Vector y;

  friend bool operator==(const PrimalDualPoint&,
                         const PrimalDualPoint&) = default;
};

inline double Distance(const PrimalDualPoint& a, const PrimalDualPoint& b) {
  const double dx = Distance(a.x, b.x);
  const double dy = Distance(a.y, b.y);
  return std::sqrt(dx * dx + dy * dy);
}

inline double Norm(const PrimalDualPoint& z) {
  return std::sqrt(SquaredNorm(z.x) + SquaredNorm(z.y));
}

// Primal step eta = s / w, dual step sigma = s * w.
struct StepState {
  double step_size = 1.0;      // s
  double primal_weight = 1.0;  // w

  double primal_step() const { return step_size / primal_weight; }
  double dual_step() const { return step_size * primal_weight; }
};

// Clamp of x to the box [l, u].
inline Vector ProjectPrimal(std::span<const double> x,
                            std::span<const double> lower,
                            std::span<const double> upper) {
  Vector out(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    out[i] = std::clamp(x[i], lower[i], upper[i]);
  }
  return out;
}

// Clamps the first m1 (inequality) components at zero from below.
inline Vector ProjectDual(std::span<const double> y, int64_t num_ineq) {
  Vector out(y.begin(), y.end());
  for (int64_t i = 0; i < num_ineq; ++i) out[i] = std::max(out[i], 0.0);
  return out;
}

// State of one PDHG run in the working (possibly scaled) space. The products
// K x and K^T y of the current point are cached so a step costs exactly one
// product with K and one with K^T. The sums accumulate the post-update iterates
// of the current epoch with per-iterate weights.
struct IterateState {
  Vector x;
  Vector y;
  Vector kx;
  Vector kty;

  Vector sum_x;
  Vector sum_y;
  Vector sum_kx;
  Vector sum_kty;
  double weight_sum = 0.0;

  // Last accepted move z^{k+1} - z^k.
  Vector delta_x;
  Vector delta_y;

  int64_t inner_count = 0;
  int64_t total_count = 0;
  int64_t epoch_index = 0;
  int64_t matvecs = 0;

  // Projects (x0, y0) onto X x Y and fills the product caches.
  static IterateState Initial(const SaddleForm& saddle,
                              std::span<const double> x0,
                              std::span<const double> y0) {
    if (static_cast<int64_t>(x0.size()) != saddle.num_variables() ||
        static_cast<int64_t>(y0.size()) != saddle.num_constraints()) {
      throw Error(ErrorCode::kDimensionMismatch, "initial point size");
    }
    IterateState s;
    s.x = ProjectPrimal(x0, saddle.lower_bounds, saddle.upper_bounds);
    s.y = ProjectDual(y0, saddle.num_ineq);
    s.RefreshProducts(saddle);
    s.ClearAverage();
    s.delta_x.assign(s.x.size(), 0.0);
    s.delta_y.assign(s.y.size(), 0.0);
    return s;
  }

  static IterateState AtZero(const SaddleForm& saddle) {
    return Initial(saddle, Vector(saddle.num_variables(), 0.0),
                   Vector(saddle.num_constraints(), 0.0));
  }

  void RefreshProducts(const SaddleForm& saddle) {
    kx.resize(saddle.num_constraints());
    kty.resize(saddle.num_variables());
    MatVecInto(saddle.constraint_matrix, x, kx);
    MatVecTransposeInto(saddle.constraint_matrix, y, kty);
    matvecs += 2;
  }

  void ClearAverage() {
    sum_x.assign(x.size(), 0.0);
    sum_y.assign(y.size(), 0.0);
    sum_kx.assign(kx.size(), 0.0);
    sum_kty.assign(kty.size(), 0.0);
    weight_sum = 0.0;
  }

  PrimalDualPoint Current() const { return {x, y}; }

  // Weighted epoch average; the current point when the epoch is empty.
  PrimalDualPoint Average() const {
    if (weight_sum <= 0.0) return Current();
    return {Scaled(sum_x), Scaled(sum_y)};
  }
  Vector AverageKx() const { return weight_sum > 0.0 ? Scaled(sum_kx) : kx; }
  Vector AverageKty() const {
    return weight_sum > 0.0 ? Scaled(sum_kty) : kty;
  }

 private:
  Vector Scaled(const Vector& sum) const {
    Vector out(sum.size());
    for (size_t i = 0; i < sum.size(); ++i) out[i] = sum[i] / weight_sum;
    return out;
  }
};

// Candidate next point of one PDHG step (not yet committed).
struct PdhgTrial {
  Vector x;
  Vector y;
  Vector kx;
  Vector kty;
};

// One step of
//   x+ = proj_X(x - eta (c - K^T y))
//   y+ = proj_Y(y + sigma (q - K (2 x+ - x)))
// written into `trial`. K(2x+ - x) is formed as 2 K x+ - K x from the cache.
inline void ComputeTrial(const IterateState& state, const SaddleForm& saddle,
                         const StepState& step, PdhgTrial& trial) {
  const double eta = step.primal_step();
  const double sigma = step.dual_step();
  const int64_t n = saddle.num_variables();
  const int64_t m = saddle.num_constraints();
  trial.x.resize(n);
  trial.y.resize(m);
  trial.kx.resize(m);
  trial.kty.resize(n);
  for (int64_t j = 0; j < n; ++j) {
    trial.x[j] = std::clamp(
        state.x[j] - eta * (saddle.objective[j] - state.kty[j]),
        saddle.lower_bounds[j], saddle.upper_bounds[j]);
  }
  MatVecInto(saddle.constraint_matrix, trial.x, trial.kx);
  for (int64_t i = 0; i < m; ++i) {
    double v = state.y[i] +
               sigma * (saddle.rhs[i] - (2.0 * trial.kx[i] - state.kx[i]));
    if (i < saddle.num_ineq) v = std::max(v, 0.0);
    trial.y[i] = v;
  }
  MatVecTransposeInto(saddle.constraint_matrix, trial.y, trial.kty);
}

// Commits `trial` as the new iterate and adds it to the epoch average with
// `weight`. Throws kNonFiniteIterate if the trial contains NaN or infinity.
inline void AcceptTrial(IterateState& state, PdhgTrial& trial,
                        double weight) {
  for (double v : trial.x) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFiniteIterate, "primal iterate diverged");
    }
  }
  for (double v : trial.y) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFiniteIterate, "dual iterate diverged");
    }
  }
  state.delta_x.resize(trial.x.size());
  state.delta_y.resize(trial.y.size());
  for (size_t j = 0; j < trial.x.size(); ++j) {
    state.delta_x[j] = trial.x[j] - state.x[j];
  }
  for (size_t i = 0; i < trial.y.size(); ++i) {
    state.delta_y[i] = trial.y[i] - state.y[i];
  }
  std::swap(state.x, trial.x);
  std::swap(state.y, trial.y);
  std::swap(state.kx, trial.kx);
  std::swap(state.kty, trial.kty);
  for (size_t j = 0; j < state.x.size(); ++j) {
    state.sum_x[j] += weight * state.x[j];
    state.sum_kty[j] += weight * state.kty[j];
  }
  for (size_t i = 0; i < state.y.size(); ++i) {
    state.sum_y[i] += weight * state.y[i];
    state.sum_kx[i] += weight * state.kx[i];
  }
  state.weight_sum += weight;
  state.matvecs += 2;
  ++state.inner_count;
  ++state.total_count;
}

// Plain PDHG step with uniform (weight 1) averaging unless told otherwise.
inline void PdhgStep(IterateState& state, const SaddleForm& saddle,
                     const StepState& step, double average_weight = 1.0) {
  PdhgTrial trial;
  ComputeTrial(state, saddle, step, trial);
  AcceptTrial(state, trial, average_weight);
}

// sqrt(w |dx|^2 + |dy|^2 / w)
inline double OmegaNorm(std::span<const double> dx, std::span<const double> dy,
                        double primal_weight) {
  return std::sqrt(primal_weight * SquaredNorm(dx) +
                   SquaredNorm(dy) / primal_weight);
}

// <dz, P dz> for P = [I/eta, K^T; K, I/sigma], i.e.
//   (1/s)(w |dx|^2 + |dy|^2 / w) + 2 dy^T K dx.
// P is positive definite only while s |K|_2 < 1; `norm_k` is the caller's
// bound on |K|_2 and a violation is reported as kNonPositive.
inline double PsQuadraticForm(std::span<const double> dx,
                              std::span<const double> dy,
                              const StepState& step, const SparseMatrix& k,
                              double norm_k) {
  if (step.step_size * norm_k >= 1.0) {
    throw Error(ErrorCode::kNonPositive,
                "P_s form needs s * |K| < 1, got " +
                    std::to_string(step.step_size * norm_k));
  }
  const double w = step.primal_weight;
  const double diag =
      (w * SquaredNorm(dx) + SquaredNorm(dy) / w) / step.step_size;
  if (k.nonzeros() == 0) return diag;
  const Vector kdx = MatVec(k, dx);
  return diag + 2.0 * Dot(dy, kdx);
}

enum class PsNormMode { kOmega, kFull };

// Distance between two points: the w-norm, or the full P_s quadratic form.
inline double PsNorm(const PrimalDualPoint& z1, const PrimalDualPoint& z2,
                     const StepState& step, PsNormMode mode,
                     const SparseMatrix& k, double norm_k) {
  Vector dx(z1.x.size());
  Vector dy(z1.y.size());
  for (size_t j = 0; j < dx.size(); ++j) dx[j] = z1.x[j] - z2.x[j];
  for (size_t i = 0; i < dy.size(); ++i) dy[i] = z1.y[i] - z2.y[i];
  if (mode == PsNormMode::kOmega) return OmegaNorm(dx, dy, step.primal_weight);
  return PsQuadraticForm(dx, dy, step, k, norm_k);
}

}  // namespace pdlp

#endif  // PDLP_PDHG_HPP
