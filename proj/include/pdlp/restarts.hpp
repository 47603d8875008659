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

#ifndef PDLP_RESTARTS_HPP
#define PDLP_RESTARTS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>

#include "pdlp/errors.hpp"
#include "pdlp/pdhg.hpp"
#include "pdlp/problem.hpp"
#include "pdlp/sparse_matrix.hpp"

namespace pdlp {

// rho_r(z) = max { L(x, y^) - L(x^, y) : z^ in Z, |z^ - z|_2 <= r } / r.
//
// The objective is linear in the displacement with gradient
// d = (K^T y - c, q - K x), so the maximizer is delta(t) = proj_Z(z + t d) - z
// for the t where |delta(t)| = r; |delta(t)| is nondecreasing in t and t is
// found by bisection. `kx` and `kty` are K x and K^T y at z.
inline double NormalizedDualityGap(const SaddleForm& saddle,
                                   const PrimalDualPoint& z,
                                   std::span<const double> kx,
                                   std::span<const double> kty, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::kInvalidRadius,
                "normalized gap radius must be positive and finite");
  }
  const int64_t n = saddle.num_variables();
  const int64_t m = saddle.num_constraints();
  if (static_cast<int64_t>(z.x.size()) != n ||
      static_cast<int64_t>(z.y.size()) != m) {
    throw Error(ErrorCode::kDimensionMismatch, "gap point size");
  }
  Vector dx(n);
  Vector dy(m);
  for (int64_t j = 0; j < n; ++j) dx[j] = kty[j] - saddle.objective[j];
  for (int64_t i = 0; i < m; ++i) dy[i] = saddle.rhs[i] - kx[i];
  const double norm_d = std::sqrt(SquaredNorm(dx) + SquaredNorm(dy));
  if (norm_d == 0.0) return 0.0;

  auto lower_y = [&](int64_t i) { return i < saddle.num_ineq ? 0.0 : -kInf; };
  // Displacement of coordinate j when moving t along d and clamping.
  auto step_x = [&](int64_t j, double t) {
    return std::clamp(z.x[j] + t * dx[j], saddle.lower_bounds[j],
                      saddle.upper_bounds[j]) -
           z.x[j];
  };
  auto step_y = [&](int64_t i, double t) {
    return std::max(z.y[i] + t * dy[i], lower_y(i)) - z.y[i];
  };
  auto displacement_norm = [&](double t) {
    double sum = 0.0;
    for (int64_t j = 0; j < n; ++j) {
      const double d = step_x(j, t);
      sum += d * d;
    }
    for (int64_t i = 0; i < m; ++i) {
      const double d = step_y(i, t);
      sum += d * d;
    }
    return std::sqrt(sum);
  };
  auto gain = [&](double t) {
    double sum = 0.0;
    for (int64_t j = 0; j < n; ++j) sum += dx[j] * step_x(j, t);
    for (int64_t i = 0; i < m; ++i) sum += dy[i] * step_y(i, t);
    return sum;
  };

  const double t0 = radius / norm_d;
  // Clamping only shortens the move, so |delta(t0)| <= r with equality iff no
  // bound is hit: then the ball maximizer is t0 d and rho = |d|.
  const double at_t0 = displacement_norm(t0);
  if (at_t0 >= radius * (1.0 - 1e-15)) return norm_d;

  // Largest reachable displacement: finite only if every moving coordinate
  // runs into a finite bound.
  bool bounded = true;
  double t_saturate = t0;
  for (int64_t j = 0; j < n && bounded; ++j) {
    if (dx[j] > 0.0) {
      if (saddle.upper_bounds[j] == kInf) {
        bounded = false;
      } else {
        t_saturate = std::max(t_saturate,
                              (saddle.upper_bounds[j] - z.x[j]) / dx[j]);
      }
    } else if (dx[j] < 0.0) {
      if (saddle.lower_bounds[j] == -kInf) {
        bounded = false;
      } else {
        t_saturate = std::max(t_saturate,
                              (saddle.lower_bounds[j] - z.x[j]) / dx[j]);
      }
    }
  }
  for (int64_t i = 0; i < m && bounded; ++i) {
    if (dy[i] > 0.0 || i >= saddle.num_ineq) {
      if (dy[i] != 0.0) bounded = false;
    } else if (dy[i] < 0.0) {
      t_saturate = std::max(t_saturate, -z.y[i] / dy[i]);
    }
  }
  if (bounded && displacement_norm(t_saturate) <= radius) {
    return gain(t_saturate) / radius;
  }

  double lo = t0;
  double hi = 2.0 * t0;
  for (int k = 0; k < 2000 && displacement_norm(hi) < radius; ++k) {
    lo = hi;
    hi *= 2.0;
  }
  for (int k = 0; k < 100; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double dn = displacement_norm(mid);
    if (dn <= radius) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (std::abs(dn - radius) <= 1e-10 * radius) {
      if (dn <= radius) break;
    }
  }
  return gain(lo) / radius;
}

// Convenience overload that forms K x and K^T y itself.
inline double NormalizedDualityGap(const SaddleForm& saddle,
                                   const PrimalDualPoint& z, double radius) {
  const Vector kx = MatVec(saddle.constraint_matrix, z.x);
  const Vector kty = MatVecTranspose(saddle.constraint_matrix, z.y);
  return NormalizedDualityGap(saddle, z, kx, kty, radius);
}

// Restart period ceil(4 e |K|_2 / alpha) for a known sharpness constant alpha.
inline int64_t FixedPeriodFromSharpness(double norm_k, double sharpness) {
  if (!(norm_k > 0.0) || !(sharpness > 0.0)) {
    throw Error(ErrorCode::kNonPositiveInput,
                "restart period needs positive |K| and sharpness");
  }
  return static_cast<int64_t>(
      std::ceil(4.0 * std::numbers::e * norm_k / sharpness));
}

enum class RestartScheme { kNone, kFixed, kAdaptive };
enum class RestartCandidateRule { kAverage, kBestOfAverageAndCurrent };

struct RestartConfig {
  RestartScheme scheme = RestartScheme::kAdaptive;
  // Used when scheme == kFixed; if 0 and `sharpness` is set, derived from it.
  int64_t period = 0;
  std::optional<double> sharpness;
  // Restart once the candidate gap is at most this fraction of the reference.
  double sufficient_decay = 0.5;
  // Forced restart once an epoch is longer than this fraction of all
  // iterations so far (and at least `artificial_floor`).
  double artificial_fraction = 0.36;
  int64_t artificial_floor = 10;
  RestartCandidateRule candidate_rule =
      RestartCandidateRule::kBestOfAverageAndCurrent;
  // Adaptive test cadence in inner iterations.
  int64_t check_interval = 40;

  void Validate() const {
    if (!(sufficient_decay > 0.0 && sufficient_decay < 1.0)) {
      throw Error(ErrorCode::kConfigInvalid,
                  "restart sufficient_decay must lie in (0, 1)");
    }
    if (scheme == RestartScheme::kFixed && period < 1 && !sharpness) {
      throw Error(ErrorCode::kConfigInvalid,
                  "fixed restart needs period >= 1 or a sharpness");
    }
    if (check_interval < 1) {
      throw Error(ErrorCode::kConfigInvalid, "restart check_interval < 1");
    }
  }
};

// Start of the current epoch and its reference gap.
struct EpochSnapshot {
  PrimalDualPoint start;                          // z^{n,0}
  std::optional<PrimalDualPoint> previous_start;  // z^{n-1,0}
  double gap_at_start = 0.0;
  double radius_at_start = 0.0;
};

// The reference is rho at z^{n,0} with radius |z^{n,0} - z^{n-1,0}|; for the
// first epoch (or a zero move) the radius is |z^{n,0}| + 1.
inline EpochSnapshot MakeEpochSnapshot(
    const SaddleForm& saddle, PrimalDualPoint start, std::span<const double> kx,
    std::span<const double> kty,
    std::optional<PrimalDualPoint> previous_start) {
  EpochSnapshot snap;
  double radius = previous_start ? Distance(start, *previous_start) : 0.0;
  if (!(radius > 0.0)) radius = Norm(start) + 1.0;
  snap.radius_at_start = radius;
  snap.gap_at_start = NormalizedDualityGap(saddle, start, kx, kty, radius);
  snap.start = std::move(start);
  snap.previous_start = std::move(previous_start);
  return snap;
}

enum class RestartReason { kNone, kFixedPeriod, kSufficientDecay, kArtificial };

inline int64_t ArtificialCap(const RestartConfig& cfg, int64_t total_count) {
  return std::max<int64_t>(
      cfg.artificial_floor,
      static_cast<int64_t>(cfg.artificial_fraction *
                           static_cast<double>(total_count)));
}

// Restart test at an adaptive check point. `candidate_gap` is rho of the
// chosen candidate at radius `candidate_radius` = |candidate - z^{n,0}|.
inline RestartReason ShouldRestart(const IterateState& state,
                                   const EpochSnapshot& snapshot,
                                   const RestartConfig& cfg,
                                   double candidate_gap,
                                   double candidate_radius) {
  switch (cfg.scheme) {
    case RestartScheme::kNone:
      return RestartReason::kNone;
    case RestartScheme::kFixed:
      return state.inner_count >= cfg.period ? RestartReason::kFixedPeriod
                                             : RestartReason::kNone;
    case RestartScheme::kAdaptive:
      break;
  }
  if (!(candidate_radius > 0.0)) return RestartReason::kNone;
  if (candidate_gap <= cfg.sufficient_decay * snapshot.gap_at_start) {
    return RestartReason::kSufficientDecay;
  }
  if (state.inner_count > ArtificialCap(cfg, state.total_count)) {
    return RestartReason::kArtificial;
  }
  return RestartReason::kNone;
}

// Starts a new epoch at `candidate` (which must lie in Z).
inline void ApplyRestart(IterateState& state, const SaddleForm& saddle,
                         PrimalDualPoint candidate) {
  state.x = std::move(candidate.x);
  state.y = std::move(candidate.y);
  state.RefreshProducts(saddle);
  state.ClearAverage();
  state.inner_count = 0;
  ++state.epoch_index;
}

}  // namespace pdlp

#endif  // PDLP_RESTARTS_HPP
