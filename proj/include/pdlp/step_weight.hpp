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

#ifndef PDLP_STEP_WEIGHT_HPP
#define PDLP_STEP_WEIGHT_HPP

#include <algorithm>
#include <cmath>
#include <optional>

#include "pdlp/errors.hpp"
#include "pdlp/pdhg.hpp"
#include "pdlp/problem.hpp"
#include "pdlp/sparse_matrix.hpp"

namespace pdlp {

enum class StepMode { kFixed, kAdaptive };

struct StepPolicy {
  StepMode mode = StepMode::kAdaptive;
  // Fixed mode: explicit s, or 0.9 / |K|_2 when unset.
  std::optional<double> fixed_step;
  double reduction_exponent = 0.3;
  double growth_exponent = 0.6;
  int max_retries = 60;

  void Validate() const {
    if (!(reduction_exponent > 0.0) || !(growth_exponent > 0.0) ||
        max_retries < 1) {
      throw Error(ErrorCode::kConfigInvalid, "step policy parameters");
    }
    if (fixed_step && !(*fixed_step > 0.0)) {
      throw Error(ErrorCode::kConfigInvalid, "fixed step size must be > 0");
    }
  }
};

enum class WeightMode { kFixed, kAdaptive };

struct WeightPolicy {
  WeightMode mode = WeightMode::kAdaptive;
  std::optional<double> fixed_weight;  // initial w; the only w in fixed mode
  double smoothing = 0.5;              // theta
  double movement_floor = 1e-10;

  void Validate() const {
    if (!(smoothing >= 0.0 && smoothing <= 1.0)) {
      throw Error(ErrorCode::kConfigInvalid,
                  "primal weight smoothing must lie in [0, 1]");
    }
    if (fixed_weight && !(*fixed_weight > 0.0)) {
      throw Error(ErrorCode::kConfigInvalid, "primal weight must be > 0");
    }
  }
};

// Largest step the acceptance test allows for the move (dx, dy):
//   s_hat = (w |dx|^2 + |dy|^2 / w) / (2 * (-dy^T K dx)),
// +inf when the interaction -dy^T K dx is not positive. `kdx` = K dx.
inline double StepSizeLimit(std::span<const double> dx,
                            std::span<const double> dy,
                            std::span<const double> kdx,
                            double primal_weight) {
  const double movement = primal_weight * SquaredNorm(dx) +
                          SquaredNorm(dy) / primal_weight;
  const double interaction = -Dot(dy, kdx);
  if (!(interaction > 0.0)) return kInf;
  return movement / (2.0 * interaction);
}

struct AdaptiveStepOutcome {
  bool accepted = false;
  int rejected = 0;
};

// Scratch buffers reused across iterations.
struct AdaptiveStepWorkspace {
  PdhgTrial trial;
  Vector dx;
  Vector dy;
  Vector kdx;
};

// One accepted PDHG step with the heuristic line search. Each attempt uses the
// current s; afterwards
//   s <- min((1 - (t+1)^-0.3) s_hat, (1 + (t+1)^-0.6) s)
// with t the number of step attempts made so far in the solve (>= 1). A trial
// is accepted iff s <= s_hat. Accepted iterates enter the average with weight
// s. Throws kStepSizeUnderflow if s falls below 1e-14 * `initial_step`.
inline AdaptiveStepOutcome AdaptiveStep(IterateState& state,
                                        const SaddleForm& saddle,
                                        StepState& step,
                                        const StepPolicy& policy,
                                        double initial_step,
                                        int64_t attempts_so_far,
                                        AdaptiveStepWorkspace& ws) {
  AdaptiveStepOutcome out;
  for (int attempt = 0; attempt < policy.max_retries; ++attempt) {
    ComputeTrial(state, saddle, step, ws.trial);
    const size_t n = state.x.size();
    const size_t m = state.y.size();
    ws.dx.resize(n);
    ws.dy.resize(m);
    ws.kdx.resize(m);
    for (size_t j = 0; j < n; ++j) ws.dx[j] = ws.trial.x[j] - state.x[j];
    for (size_t i = 0; i < m; ++i) {
      ws.dy[i] = ws.trial.y[i] - state.y[i];
      ws.kdx[i] = ws.trial.kx[i] - state.kx[i];
    }
    const double limit =
        StepSizeLimit(ws.dx, ws.dy, ws.kdx, step.primal_weight);
    const double used = step.step_size;
    const double t = static_cast<double>(attempts_so_far + attempt + 1);
    const double shrink =
        std::isinf(limit)
            ? kInf
            : (1.0 - std::pow(t + 1.0, -policy.reduction_exponent)) * limit;
    const double grow =
        (1.0 + std::pow(t + 1.0, -policy.growth_exponent)) * step.step_size;
    const bool accept = used <= limit;
    if (accept) {
      AcceptTrial(state, ws.trial, used);
      step.step_size = std::min(shrink, grow);
      out.accepted = true;
      return out;
    }
    state.matvecs += 2;
    ++out.rejected;
    step.step_size = std::min(shrink, grow);
    if (step.step_size < 1e-14 * initial_step) {
      throw Error(ErrorCode::kStepSizeUnderflow,
                  "adaptive step size collapsed to " +
                      std::to_string(step.step_size));
    }
  }
  return out;
}

// w+ = exp(theta ln(dy / dx) + (1 - theta) ln w) when both movements exceed
// the floor; otherwise w is kept.
inline double UpdatePrimalWeight(double primal_weight, double delta_x_norm,
                                 double delta_y_norm,
                                 const WeightPolicy& policy) {
  if (policy.mode == WeightMode::kFixed) return primal_weight;
  if (!(delta_x_norm > policy.movement_floor) ||
      !(delta_y_norm > policy.movement_floor)) {
    return primal_weight;
  }
  return std::exp(policy.smoothing * std::log(delta_y_norm / delta_x_norm) +
                  (1.0 - policy.smoothing) * std::log(primal_weight));
}

inline double MaxAbsEntry(const SparseMatrix& k) { return InfNorm(k.values()); }

// Initial (s, w). Fixed stepping uses the policy's s or 0.9 / |K|_2; adaptive
// stepping starts from 1 / max |K_ij|. w starts at |c|_2 / |q|_2 when both are
// nonnegligible.
inline StepState InitializeStepState(const SaddleForm& saddle, double norm_k,
                                     const StepPolicy& step_policy = {},
                                     const WeightPolicy& weight_policy = {}) {
  if (!(norm_k > 0.0)) {
    throw Error(ErrorCode::kNonPositiveInput, "|K| must be positive");
  }
  StepState s;
  if (step_policy.mode == StepMode::kFixed) {
    s.step_size = step_policy.fixed_step.value_or(0.9 / norm_k);
  } else {
    const double max_entry = MaxAbsEntry(saddle.constraint_matrix);
    s.step_size = max_entry > 0.0 ? 1.0 / max_entry : 1.0;
  }
  if (weight_policy.fixed_weight) {
    s.primal_weight = *weight_policy.fixed_weight;
  } else {
    const double nc = Norm(saddle.objective);
    const double nq = Norm(saddle.rhs);
    s.primal_weight = (nc > 1e-10 && nq > 1e-10) ? nc / nq : 1.0;
  }
  return s;
}

}  // namespace pdlp

#endif  // PDLP_STEP_WEIGHT_HPP
