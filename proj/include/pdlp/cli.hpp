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

#ifndef PDLP_CLI_HPP
#define PDLP_CLI_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "pdlp/config_flags.hpp"
#include "pdlp/generators.hpp"
#include "pdlp/mps.hpp"
#include "pdlp/report.hpp"
#include "pdlp/solver.hpp"

namespace pdlp {

enum ExitCode : int {
  kExitOptimal = 0,
  kExitUsage = 1,
  kExitInfeasible = 2,
  kExitLimit = 3,
  kExitNumerical = 4,
};

inline int ExitCodeFor(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return kExitOptimal;
    case SolveStatus::kPrimalInfeasible:
    case SolveStatus::kDualInfeasible: return kExitInfeasible;
    case SolveStatus::kIterationLimit:
    case SolveStatus::kTimeLimit: return kExitLimit;
    case SolveStatus::kNumericalError: return kExitNumerical;
  }
  return kExitNumerical;
}

// exp(mean ln(v + shift)) - shift, evaluated as
// shift * expm1(mean log1p(v / shift)) so all-zero inputs give exactly 0.
inline double ShiftedGeometricMean(const std::vector<double>& values,
                                   double shift = 10.0) {
  if (values.empty()) return 0.0;
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  if (shift > 0.0) {
    for (double v : values) sum += std::log1p(v / shift);
    return shift * std::expm1(sum / n);
  }
  for (double v : values) sum += std::log(v + shift);
  return std::exp(sum / n) - shift;
}

namespace internal {

inline std::string ReadAll(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline std::string ReadInput(const std::string& path) {
  if (path == "-") return ReadAll(std::cin);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  return ReadAll(in);
}

// "-" goes to `stdout_stream`.
inline void WriteOutput(const std::string& path, const std::string& data,
                        std::ostream& stdout_stream) {
  if (path == "-") {
    stdout_stream << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << data)) {
    throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  }
}

inline MpsDialect DialectFrom(const std::string& format) {
  MpsDialect d;
  d.mode = format == "fixed" ? MpsMode::kFixed : MpsMode::kFree;
  return d;
}

// Prints a progress line roughly every `every` iterations (checks happen at
// the termination cadence, so lines land on the first check past each mark).
inline std::function<void(const ProgressInfo&)> ProgressLogger(
    int64_t every, std::ostream& err) {
  if (every <= 0) return nullptr;
  auto next = std::make_shared<int64_t>(every);
  return [every, next, &err](const ProgressInfo& p) {
    if (p.iteration < *next) return;
    while (*next <= p.iteration) *next += every;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "iter %8lld  rel_primal %.3e  rel_dual %.3e  rel_gap %.3e"
                  "  step %.3e  weight %.3e\n",
                  static_cast<long long>(p.iteration),
                  p.kkt.rel_primal_residual, p.kkt.rel_dual_residual,
                  p.kkt.rel_gap, p.step_size, p.primal_weight);
    err << buf;
  };
}

}  // namespace internal

struct SolveArgs {
  std::string input;
  std::string out;  // JSON report path, "-" for stdout
  std::string format = "free";
  bool text = false;
  SolveFlags flags;
};

inline void AddSolveFlags(CLI::App& app, SolveFlags& f) {
  app.add_option("--tolerance", f.tolerance, "relative KKT tolerance")
      ->capture_default_str();
  app.add_option("--max-iters", f.max_iters, "iteration limit");
  app.add_option("--time-limit-sec", f.time_limit_sec, "wall-clock limit")
      ->capture_default_str();
  app.add_option("--restart", f.restart, "none|fixed=K|adaptive")
      ->capture_default_str();
  app.add_option("--scaling", f.scaling, "none|ruiz|pc|ruiz+pc")
      ->capture_default_str();
  app.add_option("--step-size", f.step_size, "fixed=S|adaptive")
      ->capture_default_str();
  app.add_option("--primal-weight", f.primal_weight, "fixed=W|adaptive")
      ->capture_default_str();
  app.add_option("--log-every", f.log_every, "progress line interval (0: off)")
      ->capture_default_str();
}

inline int RunSolve(const SolveArgs& args, std::ostream& out,
                    std::ostream& err) {
  try {
    SolverConfig config = ConfigFromFlags(args.flags);
    config.progress = internal::ProgressLogger(config.log_interval, err);
    std::vector<std::string> warnings;
    const LpProblem problem = ParseMps(internal::ReadInput(args.input),
                                       internal::DialectFrom(args.format),
                                       &warnings);
    for (const std::string& w : warnings) err << "warning: " << w << "\n";
    const SolveReport report = Solve(problem, config);
    if (!args.out.empty()) {
      internal::WriteOutput(args.out, WriteReportJson(report, &args.flags),
                            out);
    }
    if (args.text || args.out != "-") out << WriteReportText(report);
    return ExitCodeFor(report.status);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

struct GenerateArgs {
  std::string kind;  // pagerank | bilinear
  PagerankSpec pagerank;
  std::string out = "-";
};

inline int RunGenerate(const GenerateArgs& args, std::ostream& out,
                       std::ostream& err) {
  try {
    LpProblem p;
    if (args.kind == "pagerank") {
      p = GeneratePagerank(args.pagerank);
    } else if (args.kind == "bilinear") {
      p = GenerateBilinearToy();
    } else {
      throw Error(ErrorCode::kSpecInvalid,
                  "unknown generator '" + args.kind + "'");
    }
    internal::WriteOutput(args.out, WriteMps(p), out);
    return kExitOptimal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

// Named configurations for ablations, each adding one enhancement.
inline SolverConfig PresetConfig(const std::string& name) {
  SolverConfig c;
  if (name == "full") return c;
  c.weight.mode = WeightMode::kFixed;
  c.weight.fixed_weight = 1.0;
  if (name == "adaptive_step") return c;
  c.step.mode = StepMode::kFixed;
  if (name == "scaled_restart") return c;
  c.restart.scheme = RestartScheme::kNone;
  if (name == "scaled") return c;
  c.scaling = ScalingMode::kNone;
  if (name == "vanilla") return c;
  throw Error(ErrorCode::kConfigInvalid,
              "unknown preset '" + name +
                  "' (vanilla|scaled|scaled_restart|adaptive_step|full)");
}

struct BenchArgs {
  std::string dir;
  std::vector<std::string> configs = {"vanilla", "scaled", "scaled_restart",
                                      "adaptive_step", "full"};
  std::string out = "-";         // per-instance CSV plus summary rows
  std::string solved_out;        // solved-count-vs-time CSV
  std::string format = "free";
  double shift = 10.0;
  int jobs = 1;
  std::string tolerance = "1e-8";
  std::string max_iters = "100000";
  std::string time_limit_sec = "inf";
};

struct BenchRow {
  std::string instance;
  std::string config;
  std::string status;
  int64_t iterations = 0;
  int64_t restarts = 0;
  int64_t matvecs = 0;
  double wall_sec = 0.0;
  double rel_kkt_final = 0.0;
};

inline std::string FormatBenchCsv(const std::vector<BenchRow>& rows,
                                  const std::vector<std::string>& configs,
                                  double shift) {
  std::string out =
      "instance,config,status,iterations,restarts,matvecs,wall_sec,"
      "rel_kkt_final\n";
  char buf[512];
  for (const BenchRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%s,%lld,%lld,%lld,%.6f,%.6e\n",
                  r.instance.c_str(), r.config.c_str(), r.status.c_str(),
                  static_cast<long long>(r.iterations),
                  static_cast<long long>(r.restarts),
                  static_cast<long long>(r.matvecs), r.wall_sec,
                  r.rel_kkt_final);
    out += buf;
  }
  // Unsolved runs enter the means at the values they stopped with.
  for (const std::string& c : configs) {
    std::vector<double> iters, restarts, matvecs, secs, kkt;
    int64_t solved = 0;
    for (const BenchRow& r : rows) {
      if (r.config != c || r.status == "error") continue;
      iters.push_back(static_cast<double>(r.iterations));
      restarts.push_back(static_cast<double>(r.restarts));
      matvecs.push_back(static_cast<double>(r.matvecs));
      secs.push_back(r.wall_sec);
      kkt.push_back(r.rel_kkt_final);
      solved += r.status == "optimal";
    }
    std::snprintf(buf, sizeof(buf),
                  "shifted_geomean,%s,solved=%lld/%zu,%.6g,%.6g,%.6g,%.6f,"
                  "%.6e\n",
                  c.c_str(), static_cast<long long>(solved), iters.size(),
                  ShiftedGeometricMean(iters, shift),
                  ShiftedGeometricMean(restarts, shift),
                  ShiftedGeometricMean(matvecs, shift),
                  ShiftedGeometricMean(secs, shift),
                  ShiftedGeometricMean(kkt, shift));
    out += buf;
  }
  return out;
}

// For each config, the number of instances solved within each observed
// solve time (a step function sampled at its jumps).
inline std::string FormatSolvedVsTime(const std::vector<BenchRow>& rows,
                                      const std::vector<std::string>& configs) {
  std::string out = "config,time_sec,solved\n";
  char buf[256];
  for (const std::string& c : configs) {
    std::vector<double> times;
    for (const BenchRow& r : rows) {
      if (r.config == c && r.status == "optimal") times.push_back(r.wall_sec);
    }
    std::sort(times.begin(), times.end());
    std::snprintf(buf, sizeof(buf), "%s,%.6f,0\n", c.c_str(), 0.0);
    out += buf;
    for (size_t k = 0; k < times.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%s,%.6f,%zu\n", c.c_str(), times[k],
                    k + 1);
      out += buf;
    }
  }
  return out;
}

inline std::vector<BenchRow> RunBenchMatrix(const BenchArgs& args,
                                            std::ostream& err) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  if (fs::is_directory(args.dir)) {
    for (const auto& e : fs::directory_iterator(args.dir)) {
      const std::string ext = e.path().extension().string();
      if (e.is_regular_file() && (ext == ".mps" || ext == ".MPS")) {
        files.push_back(e.path());
      }
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw Error(ErrorCode::kIo, "no .mps instances in '" + args.dir + "'");
  }
  std::vector<SolverConfig> configs;
  for (const std::string& name : args.configs) {
    SolveFlags f = FlagsFromConfig(PresetConfig(name));
    f.tolerance = args.tolerance;
    f.max_iters = args.max_iters;
    f.time_limit_sec = args.time_limit_sec;
    configs.push_back(ConfigFromFlags(f, PresetConfig(name)));
  }
  const size_t n_cfg = configs.size();
  std::vector<BenchRow> rows(files.size() * n_cfg);
  std::atomic<size_t> next{0};
  std::mutex err_mutex;
  auto worker = [&] {
    for (size_t k = next++; k < rows.size(); k = next++) {
      const fs::path& file = files[k / n_cfg];
      BenchRow& row = rows[k];
      row.instance = file.stem().string();
      row.config = args.configs[k % n_cfg];
      try {
        const LpProblem p = ParseMps(internal::ReadInput(file.string()),
                                     internal::DialectFrom(args.format));
        const SolveReport r = Solve(p, configs[k % n_cfg]);
        row.status = std::string(StatusName(r.status));
        row.iterations = r.iterations;
        row.restarts = r.restarts;
        row.matvecs = r.matvecs;
        row.wall_sec = r.total_seconds;
        row.rel_kkt_final = r.kkt.MaxRelative();
      } catch (const std::exception& e) {
        row.status = "error";
        std::lock_guard<std::mutex> lock(err_mutex);
        err << "error: " << file.string() << ": " << e.what() << "\n";
      }
    }
  };
  const int jobs = std::max(1, args.jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return rows;
}

inline int RunBench(const BenchArgs& args, std::ostream& out,
                    std::ostream& err) {
  try {
    const std::vector<BenchRow> rows = RunBenchMatrix(args, err);
    internal::WriteOutput(args.out,
                          FormatBenchCsv(rows, args.configs, args.shift), out);
    if (!args.solved_out.empty()) {
      internal::WriteOutput(args.solved_out,
                            FormatSolvedVsTime(rows, args.configs), out);
    }
    return kExitOptimal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

// Entry point shared by the executable and the tests.
inline int RunMain(int argc, const char* const* argv, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"pdlp: restarted primal-dual hybrid gradient LP solver"};
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve an MPS model");
  solve_cmd->add_option("--input", solve.input, "MPS file, '-' for stdin")
      ->required();
  solve_cmd->add_option("--out", solve.out, "JSON report path, '-' for stdout");
  solve_cmd->add_option("--mps-format", solve.format, "free|fixed")
      ->check(CLI::IsMember({"free", "fixed"}))
      ->capture_default_str();
  solve_cmd->add_flag("--text", solve.text, "print the text summary");
  AddSolveFlags(*solve_cmd, solve.flags);

  GenerateArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("generate", "write a synthetic MPS");
  gen_cmd->require_subcommand(1);
  CLI::App* pr_cmd = gen_cmd->add_subcommand("pagerank", "PageRank LP");
  pr_cmd->add_option("--nodes", gen.pagerank.num_nodes)->required();
  pr_cmd->add_option("--degree", gen.pagerank.attach_degree)
      ->capture_default_str();
  pr_cmd->add_option("--damping", gen.pagerank.damping)->capture_default_str();
  pr_cmd->add_option("--seed", gen.pagerank.seed)->capture_default_str();
  pr_cmd->add_option("--out", gen.out)->capture_default_str();
  CLI::App* bl_cmd = gen_cmd->add_subcommand("bilinear", "x = 3, x >= 0");
  bl_cmd->add_option("--out", gen.out)->capture_default_str();

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "config matrix over a directory");
  bench_cmd->add_option("--dir", bench.dir, "directory of .mps files")
      ->required();
  bench_cmd->add_option("--configs", bench.configs, "presets")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "CSV path, '-' for stdout")
      ->capture_default_str();
  bench_cmd->add_option("--solved-out", bench.solved_out,
                        "solved-count-vs-time CSV");
  bench_cmd->add_option("--mps-format", bench.format)
      ->check(CLI::IsMember({"free", "fixed"}))
      ->capture_default_str();
  bench_cmd->add_option("--shift", bench.shift, "geometric mean shift")
      ->capture_default_str();
  bench_cmd->add_option("--jobs", bench.jobs)->capture_default_str();
  bench_cmd->add_option("--tolerance", bench.tolerance)->capture_default_str();
  bench_cmd->add_option("--max-iters", bench.max_iters)->capture_default_str();
  bench_cmd->add_option("--time-limit-sec", bench.time_limit_sec)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (solve_cmd->parsed()) return RunSolve(solve, out, err);
  if (gen_cmd->parsed()) {
    gen.kind = pr_cmd->parsed() ? "pagerank" : "bilinear";
    return RunGenerate(gen, out, err);
  }
  return RunBench(bench, out, err);
}

}  // namespace pdlp

#endif  // PDLP_CLI_HPP
