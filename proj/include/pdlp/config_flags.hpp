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

#ifndef PDLP_CONFIG_FLAGS_HPP
#define PDLP_CONFIG_FLAGS_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

#include "pdlp/errors.hpp"
#include "pdlp/solver.hpp"

namespace pdlp {

// String forms of the solver flags shared by the CLI and the report's
// "config" block. Each Parse* accepts exactly what the matching Format*
// produces (and a little more: "fixed" without a value for the step size).

inline std::string FormatNumber(double v) {
  if (v == std::numeric_limits<double>::infinity()) return "inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string out(buf, ptr);
  // Shortest form, with the exponent written as typed: 1e-08 -> 1e-8.
  const size_t e = out.find('e');
  if (e != std::string::npos) {
    size_t digits = e + 1;
    if (digits < out.size() && (out[digits] == '-' || out[digits] == '+')) {
      ++digits;
    }
    if (out[e + 1] == '+') {
      out.erase(e + 1, 1);
      --digits;
    }
    while (digits + 1 < out.size() && out[digits] == '0') out.erase(digits, 1);
  }
  return out;
}

inline double ParseNumber(std::string_view s, std::string_view what) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || std::isnan(v)) {
    throw Error(ErrorCode::kConfigInvalid,
                std::string(what) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

inline int64_t ParseInteger(std::string_view s, std::string_view what) {
  int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kConfigInvalid,
                std::string(what) + ": bad integer '" + std::string(s) + "'");
  }
  return v;
}

inline std::string FormatScaling(ScalingMode m) {
  switch (m) {
    case ScalingMode::kNone: return "none";
    case ScalingMode::kRuiz: return "ruiz";
    case ScalingMode::kPockChambolle: return "pc";
    case ScalingMode::kRuizThenPockChambolle: return "ruiz+pc";
  }
  return "none";
}

inline ScalingMode ParseScaling(std::string_view s) {
  if (s == "none") return ScalingMode::kNone;
  if (s == "ruiz") return ScalingMode::kRuiz;
  if (s == "pc") return ScalingMode::kPockChambolle;
  if (s == "ruiz+pc") return ScalingMode::kRuizThenPockChambolle;
  throw Error(ErrorCode::kConfigInvalid,
              "--scaling must be none|ruiz|pc|ruiz+pc, got '" + std::string(s) +
                  "'");
}

// Splits "fixed=V" into V; nullopt for a bare "fixed".
inline std::optional<std::string_view> FixedValue(std::string_view s) {
  if (s.substr(0, 6) == "fixed=") return s.substr(6);
  return std::nullopt;
}

inline std::string FormatRestart(const RestartConfig& r) {
  switch (r.scheme) {
    case RestartScheme::kNone: return "none";
    case RestartScheme::kAdaptive: return "adaptive";
    case RestartScheme::kFixed: return "fixed=" + std::to_string(r.period);
  }
  return "none";
}

inline void ParseRestart(std::string_view s, RestartConfig& r) {
  if (s == "none") {
    r.scheme = RestartScheme::kNone;
  } else if (s == "adaptive") {
    r.scheme = RestartScheme::kAdaptive;
  } else if (auto v = FixedValue(s)) {
    r.scheme = RestartScheme::kFixed;
    r.period = ParseInteger(*v, "--restart");
    if (r.period < 1) {
      throw Error(ErrorCode::kConfigInvalid, "--restart fixed=K needs K >= 1");
    }
  } else {
    throw Error(ErrorCode::kConfigInvalid,
                "--restart must be none|fixed=K|adaptive, got '" +
                    std::string(s) + "'");
  }
}

inline std::string FormatStep(const StepPolicy& p) {
  if (p.mode == StepMode::kAdaptive) return "adaptive";
  return p.fixed_step ? "fixed=" + FormatNumber(*p.fixed_step) : "fixed";
}

inline void ParseStep(std::string_view s, StepPolicy& p) {
  if (s == "adaptive") {
    p.mode = StepMode::kAdaptive;
    p.fixed_step.reset();
  } else if (s == "fixed") {
    p.mode = StepMode::kFixed;
    p.fixed_step.reset();
  } else if (auto v = FixedValue(s)) {
    p.mode = StepMode::kFixed;
    p.fixed_step = ParseNumber(*v, "--step-size");
  } else {
    throw Error(ErrorCode::kConfigInvalid,
                "--step-size must be fixed=S|adaptive, got '" + std::string(s) +
                    "'");
  }
}

inline std::string FormatWeight(const WeightPolicy& p) {
  if (p.mode == WeightMode::kAdaptive) return "adaptive";
  return "fixed=" + FormatNumber(p.fixed_weight.value_or(1.0));
}

inline void ParseWeight(std::string_view s, WeightPolicy& p) {
  if (s == "adaptive") {
    p.mode = WeightMode::kAdaptive;
    p.fixed_weight.reset();
  } else if (auto v = FixedValue(s)) {
    p.mode = WeightMode::kFixed;
    p.fixed_weight = ParseNumber(*v, "--primal-weight");
  } else {
    throw Error(ErrorCode::kConfigInvalid,
                "--primal-weight must be fixed=W|adaptive, got '" +
                    std::string(s) + "'");
  }
}

// The solve flags in string form, as typed on the command line.
struct SolveFlags {
  std::string tolerance = "1e-8";
  std::string max_iters;  // empty: unlimited
  std::string time_limit_sec = "inf";
  std::string restart = "adaptive";
  std::string scaling = "ruiz+pc";
  std::string step_size = "adaptive";
  std::string primal_weight = "adaptive";
  std::string log_every = "0";
};

inline SolverConfig ConfigFromFlags(const SolveFlags& f,
                                    SolverConfig base = {}) {
  SolverConfig c = std::move(base);
  c.termination.tol_optimal = ParseNumber(f.tolerance, "--tolerance");
  c.termination.iteration_limit =
      f.max_iters.empty() ? std::numeric_limits<int64_t>::max()
                          : ParseInteger(f.max_iters, "--max-iters");
  c.termination.time_limit_seconds =
      ParseNumber(f.time_limit_sec, "--time-limit-sec");
  ParseRestart(f.restart, c.restart);
  c.scaling = ParseScaling(f.scaling);
  ParseStep(f.step_size, c.step);
  ParseWeight(f.primal_weight, c.weight);
  c.log_interval = ParseInteger(f.log_every, "--log-every");
  if (c.log_interval < 0) {
    throw Error(ErrorCode::kConfigInvalid, "--log-every must be >= 0");
  }
  c.Validate();
  return c;
}

inline SolveFlags FlagsFromConfig(const SolverConfig& c) {
  SolveFlags f;
  f.tolerance = FormatNumber(c.termination.tol_optimal);
  f.max_iters = c.termination.iteration_limit ==
                        std::numeric_limits<int64_t>::max()
                    ? ""
                    : std::to_string(c.termination.iteration_limit);
  f.time_limit_sec = FormatNumber(c.termination.time_limit_seconds);
  f.restart = FormatRestart(c.restart);
  f.scaling = FormatScaling(c.scaling);
  f.step_size = FormatStep(c.step);
  f.primal_weight = FormatWeight(c.weight);
  f.log_every = std::to_string(c.log_interval);
  return f;
}

}  // namespace pdlp

#endif  // PDLP_CONFIG_FLAGS_HPP
