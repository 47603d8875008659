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


#include <catch2/catch_amalgamated.hpp>

#include "pdlp/report.hpp"
#include "support/toys.hpp"

using nlohmann::ordered_json;

namespace {

int CountLinesStartingWith(const std::string& text, std::string_view prefix) {
  int count = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    if (std::string_view(text).substr(pos, end - pos).starts_with(prefix)) {
      ++count;
    }
    pos = end + 1;
  }
  return count;
}

}  // namespace

TEST_CASE("optimal toy report", "[report]") {
  const auto report = pdlp::Solve(pdlp::testing::FeasibleToy());
  const std::string text = pdlp::WriteReportJson(report);
  const auto j = ordered_json::parse(text);
  CHECK(j["status"] == "optimal");
  CHECK(j["objective"].get<double>() == 0.0);
  CHECK(ordered_json::parse(text).dump().find(R"("objective":0.0)") !=
        std::string::npos);
  CHECK(j["primal_solution"].size() == 1);
  CHECK(j["dual_solution"].size() == 1);
  CHECK(j["reduced_costs"].size() == 1);
  CHECK(j["iterations"].get<int64_t>() == report.iterations);
  CHECK(j["restarts"].get<int64_t>() == report.restarts);
  CHECK(j["kkt_history"].size() == report.history.size());
  CHECK(j["kkt"].contains("rel_gap"));
  CHECK(j.contains("wall_time_sec"));
  CHECK_FALSE(j.contains("primal_infeasibility_certificate"));
  CHECK_FALSE(j.contains("dual_infeasibility_certificate"));
  CHECK_FALSE(j.contains("config"));
}

TEST_CASE("infeasible reports carry their certificate", "[report]") {
  const auto primal = pdlp::Solve(pdlp::testing::InfeasibleToy());
  REQUIRE(primal.status == pdlp::SolveStatus::kPrimalInfeasible);
  const auto jp = pdlp::ReportToJson(primal);
  CHECK(jp["status"] == "primal_infeasible");
  REQUIRE(jp["primal_infeasibility_certificate"].is_array());
  CHECK(jp["primal_infeasibility_certificate"].size() == 1);
  CHECK(jp["certificate_margin"].get<double>() > 0.0);

  const auto dual = pdlp::Solve(pdlp::testing::UnboundedToy());
  REQUIRE(dual.status == pdlp::SolveStatus::kDualInfeasible);
  const auto jd = pdlp::ReportToJson(dual);
  CHECK(jd["status"] == "dual_infeasible");
  CHECK(jd["dual_infeasibility_certificate"].is_array());
  CHECK_FALSE(jd.contains("primal_infeasibility_certificate"));
}

TEST_CASE("text report has exactly one status line", "[report]") {
  for (const auto& lp :
       {pdlp::testing::FeasibleToy(), pdlp::testing::InfeasibleToy(),
        pdlp::testing::UnboundedToy()}) {
    const std::string text = pdlp::WriteReportText(pdlp::Solve(lp));
    CHECK(CountLinesStartingWith(text, "status: ") == 1);
  }
  pdlp::SolverConfig limited;
  limited.termination.iteration_limit = 3;
  const std::string text =
      pdlp::WriteReportText(pdlp::Solve(pdlp::testing::FeasibleToy(), limited));
  CHECK(CountLinesStartingWith(text, "status: iteration_limit") == 1);
}

TEST_CASE("config block echoes the flags verbatim", "[report]") {
  pdlp::SolveFlags flags;
  flags.tolerance = "1e-4";
  flags.max_iters = "5000";
  flags.restart = "fixed=64";
  flags.scaling = "pc";
  flags.step_size = "fixed=0.5";
  flags.primal_weight = "fixed=2";
  flags.log_every = "10";
  const auto config = pdlp::ConfigFromFlags(flags);
  const auto report = pdlp::Solve(pdlp::testing::FeasibleToy(), config);
  const auto j = ordered_json::parse(pdlp::WriteReportJson(report, &flags));
  const pdlp::SolveFlags back = pdlp::FlagsFromJson(j.at("config"));
  CHECK(back.tolerance == "1e-4");
  CHECK(back.max_iters == "5000");
  CHECK(back.time_limit_sec == "inf");
  CHECK(back.restart == "fixed=64");
  CHECK(back.scaling == "pc");
  CHECK(back.step_size == "fixed=0.5");
  CHECK(back.primal_weight == "fixed=2");
  CHECK(back.log_every == "10");
}

TEST_CASE("flags survive a config round trip", "[report][property]") {
  // Canonical spellings map to a config and back unchanged.
  const std::vector<pdlp::SolveFlags> cases = {
      {},
      {"1e-4", "100", "30", "none", "none", "fixed", "fixed=1", "0"},
      {"1e-6", "", "2.5", "fixed=10", "ruiz", "fixed=0.25", "adaptive", "64"},
  };
  for (const auto& f : cases) {
    const auto back = pdlp::FlagsFromConfig(pdlp::ConfigFromFlags(f));
    CHECK(back.tolerance == f.tolerance);
    CHECK(back.max_iters == f.max_iters);
    CHECK(back.time_limit_sec == f.time_limit_sec);
    CHECK(back.restart == f.restart);
    CHECK(back.scaling == f.scaling);
    CHECK(back.step_size == f.step_size);
    CHECK(back.primal_weight == f.primal_weight);
    CHECK(back.log_every == f.log_every);
  }
  pdlp::SolveFlags bad;
  bad.scaling = "ruiz+";
  CHECK_THROWS_AS(pdlp::ConfigFromFlags(bad), pdlp::Error);
  bad = {};
  bad.restart = "fixed=0";
  CHECK_THROWS_AS(pdlp::ConfigFromFlags(bad), pdlp::Error);
  bad = {};
  bad.tolerance = "abc";
  CHECK_THROWS_AS(pdlp::ConfigFromFlags(bad), pdlp::Error);
}

TEST_CASE("number formatting", "[report]") {
  CHECK(pdlp::FormatNumber(1e-8) == "1e-8");
  CHECK(pdlp::FormatNumber(1e-4) == "1e-4");
  CHECK(pdlp::FormatNumber(1e30) == "1e30");
  CHECK(pdlp::FormatNumber(2.5e-10) == "2.5e-10");
  CHECK(pdlp::FormatNumber(0.25) == "0.25");
  CHECK(pdlp::FormatNumber(100) == "100");
  CHECK(pdlp::FormatNumber(pdlp::kInf) == "inf");
  for (double v : {1e-8, 1e-4, 1e30, 2.5e-10, 0.1, 1e100, 3e-300}) {
    CHECK(pdlp::ParseNumber(pdlp::FormatNumber(v), "x") == v);
  }
}
