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

#ifndef PDLP_REPORT_HPP
#define PDLP_REPORT_HPP

#include <cstdio>
#include <string>

#include "json.hpp"
#include "pdlp/config_flags.hpp"
#include "pdlp/solver.hpp"

namespace pdlp {

inline nlohmann::ordered_json KktToJson(const KktReport& k) {
  return {
      {"primal_residual", k.primal_residual},
      {"dual_residual", k.dual_residual},
      {"gap", k.gap},
      {"rel_primal_residual", k.rel_primal_residual},
      {"rel_dual_residual", k.rel_dual_residual},
      {"rel_gap", k.rel_gap},
  };
}

// The flag strings as given, so a report records exactly what was asked for.
inline nlohmann::ordered_json ConfigToJson(const SolveFlags& f) {
  nlohmann::ordered_json j = {
      {"tolerance", f.tolerance},
      {"max_iters", f.max_iters},
      {"time_limit_sec", f.time_limit_sec},
      {"restart", f.restart},
      {"scaling", f.scaling},
      {"step_size", f.step_size},
      {"primal_weight", f.primal_weight},
      {"log_every", f.log_every},
  };
  return j;
}

inline nlohmann::ordered_json ConfigToJson(const SolverConfig& c) {
  return ConfigToJson(FlagsFromConfig(c));
}

inline SolveFlags FlagsFromJson(const nlohmann::ordered_json& j) {
  SolveFlags f;
  f.tolerance = j.at("tolerance").get<std::string>();
  f.max_iters = j.at("max_iters").get<std::string>();
  f.time_limit_sec = j.at("time_limit_sec").get<std::string>();
  f.restart = j.at("restart").get<std::string>();
  f.scaling = j.at("scaling").get<std::string>();
  f.step_size = j.at("step_size").get<std::string>();
  f.primal_weight = j.at("primal_weight").get<std::string>();
  f.log_every = j.at("log_every").get<std::string>();
  return f;
}

// JSON report. Schema (all keys always present unless noted):
//   status                      string, one of StatusName()
//   message                     string
//   objective, dual_objective   numbers, offset and sense restored
//   primal_solution             array n
//   dual_solution               array m1 + m2 (inequality rows first)
//   reduced_costs               array n
//   primal_infeasibility_certificate  array m1 + m2 (primal_infeasible only)
//   dual_infeasibility_certificate    array n (dual_infeasible only)
//   certificate_margin          number (infeasible statuses only)
//   iterations, restarts, matvecs, step_retries   integers
//   final_step_size, final_primal_weight          numbers
//   kkt                         object, see KktToJson
//   kkt_history                 array of {iteration, rel_primal_residual,
//                               rel_dual_residual, rel_gap, step_size,
//                               primal_weight}
//   wall_time_sec               number; plus preprocess_sec, iterate_sec
//   config                      object of flag strings (when given)
// Non-finite numbers are written as null.
inline nlohmann::ordered_json ReportToJson(const SolveReport& r,
                                           const SolveFlags* flags = nullptr) {
  nlohmann::ordered_json j;
  j["status"] = std::string(StatusName(r.status));
  j["message"] = r.message;
  j["objective"] = r.objective;
  j["dual_objective"] = r.dual_objective;
  j["primal_solution"] = r.solution.x;
  j["dual_solution"] = r.solution.y;
  j["reduced_costs"] = r.reduced_costs;
  if (r.primal_infeasibility_certificate) {
    j["primal_infeasibility_certificate"] = *r.primal_infeasibility_certificate;
    j["certificate_margin"] = r.certificate_verdict.margin;
  }
  if (r.dual_infeasibility_certificate) {
    j["dual_infeasibility_certificate"] = *r.dual_infeasibility_certificate;
    j["certificate_margin"] = r.certificate_verdict.margin;
  }
  j["iterations"] = r.iterations;
  j["restarts"] = r.restarts;
  j["matvecs"] = r.matvecs;
  j["step_retries"] = r.step_retries;
  j["final_step_size"] = r.final_step_size;
  j["final_primal_weight"] = r.final_primal_weight;
  j["kkt"] = KktToJson(r.kkt);
  auto history = nlohmann::ordered_json::array();
  for (const ResidualSample& s : r.history) {
    history.push_back({
        {"iteration", s.iteration},
        {"rel_primal_residual", s.rel_primal_residual},
        {"rel_dual_residual", s.rel_dual_residual},
        {"rel_gap", s.rel_gap},
        {"step_size", s.step_size},
        {"primal_weight", s.primal_weight},
    });
  }
  j["kkt_history"] = std::move(history);
  j["wall_time_sec"] = r.total_seconds;
  j["preprocess_sec"] = r.preprocess_seconds;
  j["iterate_sec"] = r.iterate_seconds;
  if (flags) j["config"] = ConfigToJson(*flags);
  return j;
}

inline std::string WriteReportJson(const SolveReport& r,
                                   const SolveFlags* flags = nullptr) {
  return ReportToJson(r, flags).dump(2) + "\n";
}

inline std::string WriteReportText(const SolveReport& r) {
  char buf[512];
  std::string out;
  out += "status: " + std::string(StatusName(r.status)) + "\n";
  if (!r.message.empty()) out += "message: " + r.message + "\n";
  std::snprintf(buf, sizeof(buf),
                "objective: %.12g  dual objective: %.12g\n"
                "iterations: %lld  restarts: %lld  matvecs: %lld  "
                "step retries: %lld\n"
                "relative kkt: primal %.3e  dual %.3e  gap %.3e\n"
                "step size: %.6g  primal weight: %.6g\n"
                "time: %.3f s (preprocess %.3f s, iterate %.3f s)\n",
                r.objective, r.dual_objective,
                static_cast<long long>(r.iterations),
                static_cast<long long>(r.restarts),
                static_cast<long long>(r.matvecs),
                static_cast<long long>(r.step_retries),
                r.kkt.rel_primal_residual, r.kkt.rel_dual_residual,
                r.kkt.rel_gap, r.final_step_size, r.final_primal_weight,
                r.total_seconds, r.preprocess_seconds, r.iterate_seconds);
  out += buf;
  if (r.primal_infeasibility_certificate || r.dual_infeasibility_certificate) {
    std::snprintf(buf, sizeof(buf), "certificate margin: %.3e\n",
                  r.certificate_verdict.margin);
    out += buf;
  }
  return out;
}

}  // namespace pdlp

#endif  // PDLP_REPORT_HPP
