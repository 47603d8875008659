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

#ifndef PDLP_SOLVER_HPP
#define PDLP_SOLVER_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdlp/errors.hpp"
#include "pdlp/pdhg.hpp"
#include "pdlp/problem.hpp"
#include "pdlp/restarts.hpp"
#include "pdlp/scaling.hpp"
#include "pdlp/sparse_matrix.hpp"
#include "pdlp/step_weight.hpp"
#include "pdlp/termination.hpp"

namespace pdlp {

struct ProgressInfo {
  int64_t iteration = 0;
  KktReport kkt;
  double primal_weight = 1.0;
  double step_size = 1.0;
};

struct SolverConfig {
  ScalingMode scaling = ScalingMode::kRuizThenPockChambolle;
  int ruiz_iterations = 10;
  double pock_chambolle_alpha = 1.0;
  RestartConfig restart;
  StepPolicy step;
  WeightPolicy weight;
  TerminationCriteria termination;
  int64_t log_interval = 0;
  bool record_trajectory = false;

  // Spectral norm estimation (fixed steps and sharpness-derived periods).
  double spectral_tol = 1e-4;
  int spectral_max_iters = 5000;
  uint64_t seed = 0;

  // Starting point in the original space; the origin (projected) when unset.
  std::optional<PrimalDualPoint> initial_point;

  // Problem-to-problem transform applied before validation; the place for
  // presolve-style reductions.
  std::function<LpProblem(LpProblem)> presolve;
  // Called synchronously at every termination check.
  std::function<void(const ProgressInfo&)> progress;

  void Validate() const {
    restart.Validate();
    step.Validate();
    weight.Validate();
    termination.Validate();
    if (ruiz_iterations < 0) {
      throw Error(ErrorCode::kConfigInvalid, "ruiz_iterations < 0");
    }
    if (!(spectral_tol > 0.0) || spectral_max_iters < 1) {
      throw Error(ErrorCode::kConfigInvalid, "spectral norm settings");
    }
  }
};

enum class SolveStatus {
  kOptimal,
  kPrimalInfeasible,
  kDualInfeasible,
  kIterationLimit,
  kTimeLimit,
  kNumericalError,
};

inline std::string_view StatusName(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kPrimalInfeasible: return "primal_infeasible";
    case SolveStatus::kDualInfeasible: return "dual_infeasible";
    case SolveStatus::kIterationLimit: return "iteration_limit";
    case SolveStatus::kTimeLimit: return "time_limit";
    case SolveStatus::kNumericalError: return "numerical_error";
  }
  return "unknown";
}

struct ResidualSample {
  int64_t iteration = 0;
  double rel_primal_residual = 0.0;
  double rel_dual_residual = 0.0;
  double rel_gap = 0.0;
  double step_size = 0.0;
  double primal_weight = 0.0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::kIterationLimit;
  std::string message;
  bool maximize = false;

  // Solution in the original space; duals refer to the minimization form.
  PrimalDualPoint solution;
  Vector reduced_costs;
  double objective = 0.0;       // offset and sense restored
  double dual_objective = 0.0;  // offset and sense restored
  KktReport kkt;

  // Unit-normalized rays in the original space, present with the matching
  // infeasibility status.
  std::optional<Vector> primal_infeasibility_certificate;  // dual ray
  std::optional<Vector> dual_infeasibility_certificate;    // primal ray
  CertificateVerdict certificate_verdict;

  int64_t iterations = 0;
  int64_t restarts = 0;
  int64_t matvecs = 0;
  int64_t step_retries = 0;
  double final_step_size = 0.0;
  double final_primal_weight = 0.0;

  double preprocess_seconds = 0.0;
  double iterate_seconds = 0.0;
  double total_seconds = 0.0;

  std::vector<ResidualSample> history;
  // Current iterate after every step (original space), if requested.
  std::vector<PrimalDualPoint> trajectory;
};

namespace internal {

using Clock = std::chrono::steady_clock;

inline double SecondsSince(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Evaluated {
  PrimalDualPoint point;  // original space
  KktReport kkt;
};

class Driver {
 public:
  Driver(const LpProblem& input, const SolverConfig& config)
      : config_(config), start_(Clock::now()) {
    config_.Validate();
    LpProblem problem = config_.presolve ? config_.presolve(input) : input;
    report_.maximize = problem.maximize;
    problem_ = std::make_unique<ValidatedProblem>(Validate(std::move(problem)));
    original_ = ToSaddle(*problem_);
    scaling_ = ComputeScaling(original_.constraint_matrix, config_.scaling,
                              config_.ruiz_iterations,
                              config_.pock_chambolle_alpha);
    working_ = ApplyScaling(original_, scaling_);
  }

  SolveReport Run() {
    Initialize();
    report_.preprocess_seconds = SecondsSince(start_);
    const auto iterate_start = Clock::now();
    const TerminationCriteria& term = config_.termination;
    try {
      // A warm start may already be optimal; stop before moving it.
      bool done = false;
      if (Evaluated start = Evaluate(state_.x, state_.y);
          CheckOptimal(start.kkt, term)) {
        Finish(SolveStatus::kOptimal, std::move(start));
        done = true;
      }
      while (!done) {
        if (state_.total_count >= term.iteration_limit) {
          Finish(SolveStatus::kIterationLimit, BestOfCurrentAndAverage());
          break;
        }
        Step();
        if (config_.record_trajectory) {
          auto [x, y] = UnscaleSolution(state_.x, state_.y, scaling_);
          report_.trajectory.push_back({std::move(x), std::move(y)});
        }
        const bool check = state_.total_count % term.check_interval == 0;
        if (check && TerminationCheck(iterate_start)) break;
        MaybeRestart(check);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNonFiniteIterate &&
          e.code() != ErrorCode::kStepSizeUnderflow) {
        throw;
      }
      report_.message = e.what();
      FinishNumerical();
    }
    report_.iterate_seconds = SecondsSince(iterate_start);
    report_.total_seconds = SecondsSince(start_);
    return std::move(report_);
  }

 private:
  void Initialize() {
    double norm_k = 1.0;
    const bool need_norm =
        (config_.step.mode == StepMode::kFixed && !config_.step.fixed_step) ||
        (config_.restart.scheme == RestartScheme::kFixed &&
         config_.restart.period < 1);
    if (need_norm && working_.constraint_matrix.nonzeros() > 0) {
      norm_k = EstimateSpectralNorm(working_.constraint_matrix,
                                    config_.spectral_tol,
                                    config_.spectral_max_iters, config_.seed)
                   .value;
      // Estimates approach |K| from below; deflate the step by 0.99.
      norm_k /= 0.99;
    }
    if (config_.restart.scheme == RestartScheme::kFixed &&
        config_.restart.period < 1) {
      config_.restart.period =
          FixedPeriodFromSharpness(norm_k, *config_.restart.sharpness);
    }
    step_ = InitializeStepState(working_, norm_k, config_.step, config_.weight);
    initial_step_ = step_.step_size;

    Vector x0(working_.num_variables(), 0.0);
    Vector y0(working_.num_constraints(), 0.0);
    if (config_.initial_point) {
      auto [sx, sy] = ScaleSolution(config_.initial_point->x,
                                    config_.initial_point->y, scaling_);
      x0 = std::move(sx);
      y0 = std::move(sy);
    }
    state_ = IterateState::Initial(working_, x0, y0);
    origin_ = state_.Current();
    epoch_start_ = state_.Current();
    if (config_.restart.scheme == RestartScheme::kAdaptive) {
      snapshot_ = MakeEpochSnapshot(working_, state_.Current(), state_.kx,
                                    state_.kty, std::nullopt);
    }
  }

  void Step() {
    if (config_.step.mode == StepMode::kFixed) {
      PdhgStep(state_, working_, step_, 1.0);
      ++attempts_;
      return;
    }
    const AdaptiveStepOutcome out = AdaptiveStep(
        state_, working_, step_, config_.step, initial_step_, attempts_, ws_);
    attempts_ += out.rejected + (out.accepted ? 1 : 0);
    report_.step_retries += out.rejected;
    if (!out.accepted) {
      throw Error(ErrorCode::kStepSizeUnderflow,
                  "adaptive step rejected " +
                      std::to_string(config_.step.max_retries) + " times");
    }
  }

  Evaluated Evaluate(const Vector& x, const Vector& y) {
    auto [ux, uy] = UnscaleSolution(x, y, scaling_);
    Evaluated e;
    e.kkt = KktError(original_, ux, uy);
    e.point = {std::move(ux), std::move(uy)};
    extra_matvecs_ += 2;
    return e;
  }

  // The current iterate or the epoch average, whichever has the smaller
  // relative KKT error (an optimal current iterate wins ties).
  Evaluated BestOfCurrentAndAverage() {
    Evaluated current = Evaluate(state_.x, state_.y);
    if (state_.weight_sum <= 0.0 ||
        CheckOptimal(current.kkt, config_.termination)) {
      return current;
    }
    const PrimalDualPoint avg = state_.Average();
    Evaluated average = Evaluate(avg.x, avg.y);
    if (CheckOptimal(average.kkt, config_.termination) ||
        average.kkt.MaxRelative() < current.kkt.MaxRelative()) {
      return average;
    }
    return current;
  }

  // Returns true when the solve is over.
  bool TerminationCheck(Clock::time_point iterate_start) {
    Evaluated best = BestOfCurrentAndAverage();
    report_.history.push_back({state_.total_count,
                               best.kkt.rel_primal_residual,
                               best.kkt.rel_dual_residual, best.kkt.rel_gap,
                               step_.step_size, step_.primal_weight});
    if (config_.progress) {
      config_.progress(
          {state_.total_count, best.kkt, step_.primal_weight, step_.step_size});
    }
    if (CheckOptimal(best.kkt, config_.termination)) {
      Finish(SolveStatus::kOptimal, std::move(best));
      return true;
    }
    if (CheckInfeasibility()) return true;
    if (SecondsSince(iterate_start) >= config_.termination.time_limit_seconds) {
      Finish(SolveStatus::kTimeLimit, std::move(best));
      return true;
    }
    return false;
  }

  // Tests both candidate kinds; a verdict must hold on two consecutive checks.
  bool CheckInfeasibility() {
    PrimalDualPoint last = state_.Current();
    PrimalDualPoint previous = last;
    for (size_t j = 0; j < previous.x.size(); ++j) {
      previous.x[j] -= state_.delta_x[j];
    }
    for (size_t i = 0; i < previous.y.size(); ++i) {
      previous.y[i] -= state_.delta_y[i];
    }
    const double tol = config_.termination.tol_infeasible;
    std::optional<std::pair<Vector, CertificateVerdict>> primal_ray;
    std::optional<std::pair<Vector, CertificateVerdict>> dual_ray;
    for (CertificateCandidate& c :
         ExtractCertificates(last, previous, origin_, state_.total_count)) {
      auto [ux, uy] = UnscaleSolution(c.x, c.y, scaling_);
      extra_matvecs_ += 2;
      if (!primal_ray && IsRay(uy)) {
        const CertificateVerdict v = CheckPrimalInfeasible(original_, uy, tol);
        if (v.valid) primal_ray.emplace(Normalized(uy), v);
      }
      if (!dual_ray && IsRay(ux)) {
        const CertificateVerdict v = CheckDualInfeasible(original_, ux, tol);
        if (v.valid) dual_ray.emplace(Normalized(ux), v);
      }
    }
    const bool primal_twice = primal_ray && primal_valid_last_;
    const bool dual_twice = dual_ray && dual_valid_last_;
    primal_valid_last_ = primal_ray.has_value();
    dual_valid_last_ = dual_ray.has_value();
    if (primal_twice) {
      report_.primal_infeasibility_certificate = std::move(primal_ray->first);
      report_.certificate_verdict = primal_ray->second;
      Finish(SolveStatus::kPrimalInfeasible, Evaluate(state_.x, state_.y));
      return true;
    }
    if (dual_twice) {
      report_.dual_infeasibility_certificate = std::move(dual_ray->first);
      report_.certificate_verdict = dual_ray->second;
      Finish(SolveStatus::kDualInfeasible, Evaluate(state_.x, state_.y));
      return true;
    }
    return false;
  }

  void MaybeRestart(bool at_termination_check) {
    const RestartConfig& rc = config_.restart;
    if (rc.scheme == RestartScheme::kNone) return;
    if (rc.scheme == RestartScheme::kFixed) {
      if (ShouldRestart(state_, EpochSnapshot{}, rc, 0.0, 0.0) !=
          RestartReason::kNone) {
        Restart(state_.Average());
      }
      return;
    }
    if (state_.inner_count == 0) return;
    if (state_.inner_count % rc.check_interval != 0 && !at_termination_check) {
      return;
    }
    PrimalDualPoint candidate = state_.Average();
    double radius = Distance(candidate, snapshot_.start);
    double gap = radius > 0.0
                     ? NormalizedDualityGap(working_, candidate,
                                            state_.AverageKx(),
                                            state_.AverageKty(), radius)
                     : kInf;
    if (rc.candidate_rule == RestartCandidateRule::kBestOfAverageAndCurrent) {
      const double cur_radius = Distance(state_.Current(), snapshot_.start);
      if (cur_radius > 0.0) {
        const double cur_gap = NormalizedDualityGap(
            working_, state_.Current(), state_.kx, state_.kty, cur_radius);
        if (cur_gap < gap) {
          candidate = state_.Current();
          radius = cur_radius;
          gap = cur_gap;
        }
      }
    }
    if (ShouldRestart(state_, snapshot_, rc, gap, radius) !=
        RestartReason::kNone) {
      Restart(std::move(candidate));
    }
  }

  void Restart(PrimalDualPoint candidate) {
    step_.primal_weight = UpdatePrimalWeight(
        step_.primal_weight, Distance(candidate.x, epoch_start_.x),
        Distance(candidate.y, epoch_start_.y), config_.weight);
    PrimalDualPoint previous = epoch_start_;
    epoch_start_ = candidate;
    ApplyRestart(state_, working_, std::move(candidate));
    ++report_.restarts;
    if (config_.restart.scheme == RestartScheme::kAdaptive) {
      snapshot_ = MakeEpochSnapshot(working_, epoch_start_, state_.kx,
                                    state_.kty, std::move(previous));
    }
  }

  static bool IsRay(const Vector& v) {
    const double n = Norm(v);
    return n > 0.0 && std::isfinite(n);
  }

  static Vector Normalized(Vector v) {
    const double n = Norm(v);
    for (double& e : v) e /= n;
    return v;
  }

  void Finish(SolveStatus status, Evaluated result) {
    report_.status = status;
    report_.solution = std::move(result.point);
    report_.kkt = std::move(result.kkt);
    report_.reduced_costs = report_.kkt.reduced_costs;
    const LpProblem& p = problem_->problem();
    report_.objective = p.ReportedObjective(report_.kkt.primal_objective);
    report_.dual_objective = p.ReportedObjective(report_.kkt.dual_objective);
    report_.iterations = state_.total_count;
    report_.matvecs = state_.matvecs + extra_matvecs_;
    report_.final_step_size = step_.step_size;
    report_.final_primal_weight = step_.primal_weight;
  }

  void FinishNumerical() {
    bool finite = true;
    for (double v : state_.x) finite = finite && std::isfinite(v);
    for (double v : state_.y) finite = finite && std::isfinite(v);
    Evaluated e;
    if (finite) {
      e = Evaluate(state_.x, state_.y);
    } else {
      e.point = {Vector(state_.x.size(), 0.0), Vector(state_.y.size(), 0.0)};
    }
    Finish(SolveStatus::kNumericalError, std::move(e));
  }

  SolverConfig config_;
  Clock::time_point start_;
  std::unique_ptr<ValidatedProblem> problem_;
  SaddleForm original_;
  ScalingInfo scaling_;
  SaddleForm working_;
  StepState step_;
  double initial_step_ = 1.0;
  IterateState state_;
  PrimalDualPoint origin_;
  PrimalDualPoint epoch_start_;
  EpochSnapshot snapshot_;
  AdaptiveStepWorkspace ws_;
  int64_t attempts_ = 0;
  int64_t extra_matvecs_ = 0;
  bool primal_valid_last_ = false;
  bool dual_valid_last_ = false;
  SolveReport report_;
};

}  // namespace internal

// Restarted PDHG with the configured scaling, step, weight, restart and
// termination policies. Throws Error for invalid problems or configs;
// numerical breakdown is reported as kNumericalError.
inline SolveReport Solve(const LpProblem& problem,
                         const SolverConfig& config = {}) {
  internal::Driver driver(problem, config);
  return driver.Run();
}

// Plain PDHG: no scaling, no restarts, fixed step s, w = 1.
inline SolverConfig VanillaConfig(double step_size, int64_t max_iters) {
  SolverConfig cfg;
  cfg.scaling = ScalingMode::kNone;
  cfg.restart.scheme = RestartScheme::kNone;
  cfg.step.mode = StepMode::kFixed;
  cfg.step.fixed_step = step_size;
  cfg.weight.mode = WeightMode::kFixed;
  cfg.weight.fixed_weight = 1.0;
  cfg.termination.iteration_limit = max_iters;
  return cfg;
}

inline SolveReport SolveVanilla(const LpProblem& problem, double step_size,
                                int64_t max_iters) {
  if (!(step_size > 0.0)) {
    throw Error(ErrorCode::kConfigInvalid, "vanilla step size must be > 0");
  }
  return Solve(problem, VanillaConfig(step_size, max_iters));
}

}  // namespace pdlp

#endif  // PDLP_SOLVER_HPP
