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

#ifndef PDLP_MPS_HPP
#define PDLP_MPS_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pdlp/errors.hpp"
#include "pdlp/problem.hpp"
#include "pdlp/sparse_matrix.hpp"

namespace pdlp {

enum class MpsMode { kFree, kFixed };
enum class IntegerHandling { kRelaxWithWarning, kReject };

struct MpsDialect {
  MpsMode mode = MpsMode::kFree;
  IntegerHandling integer_handling = IntegerHandling::kRelaxWithWarning;
};

namespace internal {

inline std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string_view> SplitWhitespace(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

inline std::string Upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

// Fixed-format field columns (1-based): 2-3, 5-12, 15-22, 25-36, 40-47, 50-61.
inline std::vector<std::string_view> FixedFields(std::string_view line) {
  static constexpr std::pair<size_t, size_t> kFields[] = {
      {1, 3}, {4, 12}, {14, 22}, {24, 36}, {39, 47}, {49, 61}};
  std::vector<std::string_view> out;
  for (const auto& [begin, end] : kFields) {
    if (begin >= line.size()) {
      out.emplace_back();
      continue;
    }
    out.push_back(Trim(line.substr(begin, std::min(end, line.size()) - begin)));
  }
  // Numbers may overrun their nominal columns in hand-edited files.
  if (line.size() > 61) {
    out.back() = Trim(line.substr(49));
  }
  return out;
}

class MpsReader {
 public:
  MpsReader(std::string_view text, MpsDialect dialect,
            std::vector<std::string>* warnings)
      : text_(text), dialect_(dialect), warnings_(warnings) {}

  LpProblem Parse() {
    size_t pos = 0;
    while (pos <= text_.size()) {
      size_t end = text_.find('\n', pos);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no_;
      HandleLine(line);
      if (done_) break;
      pos = end + 1;
    }
    if (!saw_rows_) Fail("missing ROWS section");
    return Build();
  }

 private:
  enum class Section {
    kNone, kName, kObjSense, kRows, kColumns, kRhs, kRanges, kBounds, kEnd
  };
  struct Row {
    std::string name;
    char type;  // 'N', 'L', 'G', 'E'
    double rhs = 0.0;
    std::optional<double> range;
  };

  [[noreturn]] void Fail(const std::string& what,
                         ErrorCode code = ErrorCode::kSyntaxError) const {
    throw Error(code, "line " + std::to_string(line_no_) + ": " + what);
  }

  void Warn(const std::string& what) {
    if (warnings_) {
      warnings_->push_back("line " + std::to_string(line_no_) + ": " + what);
    }
  }

  double Number(std::string_view s) const {
    if (s.empty()) Fail("missing numeric field");
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      std::string u = Upper(s);
      if (u == "INF" || u == "INFINITY" || u == "1E+30" || u == "1E30") {
        return kInf;
      }
      if (u == "-INF" || u == "-INFINITY") return -kInf;
      Fail("bad number '" + std::string(s) + "'");
    }
    if (std::abs(v) >= 1e30) return v > 0 ? kInf : -kInf;
    return v;
  }

  void HandleLine(std::string_view line) {
    if (Trim(line).empty() || line.front() == '*') return;
    if (!std::isspace(static_cast<unsigned char>(line.front()))) {
      HandleHeader(line);
      return;
    }
    std::vector<std::string_view> f =
        dialect_.mode == MpsMode::kFree ? SplitWhitespace(line) : FixedFields(line);
    switch (section_) {
      case Section::kNone:
      case Section::kName:
      case Section::kEnd:
        Fail("data line outside of a section");
      case Section::kObjSense:
        SetSense(Trim(line));
        return;
      case Section::kRows:
        return RowsLine(f);
      case Section::kColumns:
        return ColumnsLine(f);
      case Section::kRhs:
        return RhsLine(f, /*ranges=*/false);
      case Section::kRanges:
        return RhsLine(f, /*ranges=*/true);
      case Section::kBounds:
        return BoundsLine(f);
    }
  }

  void SetSense(std::string_view word) {
    const std::string u = Upper(word);
    if (u == "MAX" || u == "MAXIMIZE") {
      maximize_ = true;
    } else if (u == "MIN" || u == "MINIMIZE") {
      maximize_ = false;
    } else {
      Fail("bad OBJSENSE '" + std::string(word) + "'");
    }
  }

  void HandleHeader(std::string_view line) {
    const auto tokens = SplitWhitespace(line);
    const std::string head = Upper(tokens.front());
    if (head == "NAME") {
      section_ = Section::kName;
      if (tokens.size() > 1) name_ = std::string(Trim(line.substr(4)));
    } else if (head == "OBJSENSE") {
      section_ = Section::kObjSense;
      if (tokens.size() > 1) SetSense(tokens[1]);
    } else if (head == "ROWS") {
      section_ = Section::kRows;
      saw_rows_ = true;
    } else if (head == "COLUMNS") {
      section_ = Section::kColumns;
    } else if (head == "RHS") {
      section_ = Section::kRhs;
    } else if (head == "RANGES") {
      section_ = Section::kRanges;
    } else if (head == "BOUNDS") {
      section_ = Section::kBounds;
    } else if (head == "ENDATA") {
      section_ = Section::kEnd;
      done_ = true;
    } else {
      Fail("unknown section '" + std::string(tokens.front()) + "'");
    }
  }

  void RowsLine(const std::vector<std::string_view>& f) {
    if (f.size() < 2 || f[0].empty() || f[1].empty()) Fail("ROWS needs type and name");
    if (f[0].size() != 1 || std::string_view("NLGE").find(f[0][0]) ==
                                std::string_view::npos) {
      Fail("unknown row type '" + std::string(f[0]) + "'");
    }
    std::string name(f[1]);
    if (row_index_.count(name)) {
      Fail("duplicate row '" + name + "'", ErrorCode::kDuplicateRow);
    }
    const char type = f[0][0];
    if (type == 'N') {
      if (objective_row_ < 0) {
        objective_row_ = static_cast<int64_t>(rows_.size());
      } else {
        Warn("extra free row '" + name + "' ignored");
      }
    }
    row_index_.emplace(name, static_cast<int64_t>(rows_.size()));
    rows_.push_back({std::move(name), type, 0.0, std::nullopt});
  }

  int64_t RowRef(std::string_view name) const {
    const auto it = row_index_.find(std::string(name));
    if (it == row_index_.end()) {
      Fail("unknown row '" + std::string(name) + "'",
           ErrorCode::kUnknownRowReference);
    }
    return it->second;
  }

  void ColumnsLine(const std::vector<std::string_view>& f) {
    // f: column, row, value [, row, value]; or column 'MARKER' kind.
    std::string_view col;
    std::vector<std::pair<std::string_view, std::string_view>> entries;
    if (dialect_.mode == MpsMode::kFree) {
      if (f.size() >= 3 && Upper(f[1]) == "'MARKER'") {
        return Marker(f[2]);
      }
      if (f.size() != 3 && f.size() != 5) Fail("COLUMNS needs 3 or 5 fields");
      col = f[0];
      entries.emplace_back(f[1], f[2]);
      if (f.size() == 5) entries.emplace_back(f[3], f[4]);
    } else {
      if (Upper(f[2]) == "'MARKER'") return Marker(f[4]);
      col = f[1];
      if (col.empty() || f[2].empty()) Fail("COLUMNS needs column and row");
      entries.emplace_back(f[2], f[3]);
      if (!f[4].empty()) entries.emplace_back(f[4], f[5]);
    }
    std::string name(col);
    if (columns_.empty() || columns_.back() != name) {
      if (column_index_.count(name)) {
        Fail("column '" + name + "' appears in two blocks",
             ErrorCode::kDuplicateColumn);
      }
      column_index_.emplace(name, static_cast<int64_t>(columns_.size()));
      columns_.push_back(name);
      objective_.push_back(0.0);
      if (in_integer_block_) ++integer_columns_;
    }
    const int64_t j = static_cast<int64_t>(columns_.size()) - 1;
    for (const auto& [row, value] : entries) {
      const int64_t r = RowRef(row);
      const double v = Number(value);
      if (!std::isfinite(v)) Fail("infinite matrix coefficient");
      if (r == objective_row_) {
        objective_[j] += v;
      } else if (rows_[r].type != 'N') {
        triplets_.push_back({r, j, v});
      }
    }
  }

  void Marker(std::string_view kind) {
    const std::string k = Upper(kind);
    if (k == "'INTORG'") {
      if (dialect_.integer_handling == IntegerHandling::kReject) {
        Fail("integer MARKER section", ErrorCode::kIntegerSectionRejected);
      }
      in_integer_block_ = true;
    } else if (k == "'INTEND'") {
      in_integer_block_ = false;
    } else {
      Fail("unknown MARKER '" + std::string(kind) + "'");
    }
  }

  void RhsLine(const std::vector<std::string_view>& f, bool ranges) {
    std::vector<std::pair<std::string_view, std::string_view>> entries;
    std::string_view set;
    if (dialect_.mode == MpsMode::kFree) {
      // Optional set name: odd field count means it is present.
      size_t k = 0;
      if (f.size() == 3 || f.size() == 5) {
        set = f[0];
        k = 1;
      } else if (f.size() != 2 && f.size() != 4) {
        Fail(std::string(ranges ? "RANGES" : "RHS") + " needs 2-5 fields");
      }
      for (; k + 1 < f.size(); k += 2) entries.emplace_back(f[k], f[k + 1]);
    } else {
      set = f[1];
      if (f[2].empty()) Fail("missing row name");
      entries.emplace_back(f[2], f[3]);
      if (!f[4].empty()) entries.emplace_back(f[4], f[5]);
    }
    std::string& active = ranges ? range_set_ : rhs_set_;
    if (active.empty()) active = std::string(set.empty() ? "_" : set);
    if (!set.empty() && active != set) {
      Warn("ignoring additional set '" + std::string(set) + "'");
      return;
    }
    for (const auto& [row, value] : entries) {
      const int64_t r = RowRef(row);
      const double v = Number(value);
      if (ranges) {
        if (rows_[r].type == 'N') {
          Warn("range on free row ignored");
          continue;
        }
        rows_[r].range = v;
      } else if (r == objective_row_) {
        objective_offset_ = -v;
      } else {
        rows_[r].rhs = v;
      }
    }
  }

  void BoundsLine(const std::vector<std::string_view>& f) {
    std::string_view type, col, value;
    if (dialect_.mode == MpsMode::kFree) {
      if (f.size() < 2) Fail("BOUNDS line too short");
      type = f[0];
      const bool needs_value = type != "FR" && type != "MI" && type != "PL" &&
                               type != "BV";
      // Layouts: type set col [value] or type col [value].
      if (f.size() == 4) {
        col = f[2];
        value = f[3];
      } else if (f.size() == 3) {
        if (needs_value) {
          col = f[1];
          value = f[2];
        } else {
          col = f[2];
        }
      } else if (f.size() == 2) {
        if (needs_value) Fail("bound value missing");
        col = f[1];
      } else {
        Fail("BOUNDS needs 2-4 fields");
      }
    } else {
      type = f[0];
      col = f[2];
      value = f[3];
    }
    const auto it = column_index_.find(std::string(col));
    if (it == column_index_.end()) {
      Fail("unknown column '" + std::string(col) + "'",
           ErrorCode::kUnknownColumnReference);
    }
    EnsureBoundStorage();
    const int64_t j = it->second;
    double& lo = lower_[j];
    double& up = upper_[j];
    if (type == "LO" || type == "LI") {
      lo = Number(value);
    } else if (type == "UP" || type == "UI") {
      up = Number(value);
      if (up < 0.0 && lo == 0.0 && !lower_set_[j]) {
        Warn("negative upper bound on '" + std::string(col) +
             "' with default lower bound; lower bound set to -inf");
        lo = -kInf;
      }
    } else if (type == "FX") {
      lo = up = Number(value);
    } else if (type == "FR") {
      lo = -kInf;
      up = kInf;
    } else if (type == "MI") {
      lo = -kInf;
    } else if (type == "PL") {
      up = kInf;
    } else if (type == "BV") {
      lo = 0.0;
      up = 1.0;
    } else {
      Fail("unknown bound type '" + std::string(type) + "'");
    }
    if (type == "LO" || type == "LI" || type == "FX" || type == "FR" ||
        type == "MI" || type == "BV") {
      lower_set_[j] = true;
    }
    if (type == "LI" || type == "UI" || type == "BV") ++integer_columns_;
  }

  void EnsureBoundStorage() {
    lower_.resize(columns_.size(), 0.0);
    upper_.resize(columns_.size(), kInf);
    lower_set_.resize(columns_.size(), false);
  }

  LpProblem Build() {
    if (integer_columns_ > 0) {
      if (dialect_.integer_handling == IntegerHandling::kReject) {
        Fail("integer bounds", ErrorCode::kIntegerSectionRejected);
      }
      Warn(std::to_string(integer_columns_) +
           " integer declarations relaxed to continuous");
    }
    EnsureBoundStorage();
    const int64_t n = static_cast<int64_t>(columns_.size());
    // Constraint rows of each kind, in file order.
    std::vector<std::vector<std::pair<int64_t, double>>> by_row(rows_.size());
    for (const Triplet& t : triplets_) by_row[t.row].emplace_back(t.col, t.value);

    LpProblem p;
    p.name = name_;
    p.maximize = maximize_;
    p.objective = objective_;
    p.objective_offset = objective_offset_;
    p.lower_bounds = lower_;
    p.upper_bounds = upper_;
    p.variable_names = columns_;
    std::vector<Triplet> g, a;
    auto add_ge = [&](int64_t r, double sign, double rhs, std::string name) {
      const int64_t i = static_cast<int64_t>(p.ineq_rhs.size());
      for (const auto& [j, v] : by_row[r]) g.push_back({i, j, sign * v});
      p.ineq_rhs.push_back(sign * rhs);
      p.ineq_row_names.push_back(std::move(name));
    };
    for (int64_t r = 0; r < static_cast<int64_t>(rows_.size()); ++r) {
      const Row& row = rows_[r];
      if (row.type == 'N') continue;
      if (!row.range || (row.type == 'E' && *row.range == 0.0)) {
        if (row.type == 'G') add_ge(r, 1.0, row.rhs, row.name);
        if (row.type == 'L') add_ge(r, -1.0, row.rhs, row.name);
        if (row.type == 'E') {
          const int64_t i = static_cast<int64_t>(p.eq_rhs.size());
          for (const auto& [j, v] : by_row[r]) a.push_back({i, j, v});
          p.eq_rhs.push_back(row.rhs);
          p.eq_row_names.push_back(row.name);
        }
        continue;
      }
      const double range = *row.range;
      double lo = 0.0, hi = 0.0;
      if (row.type == 'G') {
        lo = row.rhs;
        hi = row.rhs + std::abs(range);
      } else if (row.type == 'L') {
        lo = row.rhs - std::abs(range);
        hi = row.rhs;
      } else if (range > 0.0) {
        lo = row.rhs;
        hi = row.rhs + range;
      } else {
        lo = row.rhs + range;
        hi = row.rhs;
      }
      // Two-sided row lo <= a^T x <= hi becomes a^T x >= lo, -a^T x >= -hi.
      add_ge(r, 1.0, lo, row.name + "_lo");
      add_ge(r, -1.0, hi, row.name + "_hi");
    }
    p.ineq_matrix = SparseMatrix::FromTriplets(p.num_ineq(), n, std::move(g));
    p.eq_matrix = SparseMatrix::FromTriplets(p.num_eq(), n, std::move(a));
    if (maximize_) {
      for (double& c : p.objective) c = -c;
      p.objective_offset = -p.objective_offset;
    }
    return p;
  }

  std::string_view text_;
  MpsDialect dialect_;
  std::vector<std::string>* warnings_;
  int64_t line_no_ = 0;
  Section section_ = Section::kNone;
  bool done_ = false;
  bool saw_rows_ = false;
  bool maximize_ = false;
  bool in_integer_block_ = false;
  int64_t integer_columns_ = 0;
  std::string name_;
  std::vector<Row> rows_;
  std::unordered_map<std::string, int64_t> row_index_;
  int64_t objective_row_ = -1;
  std::vector<std::string> columns_;
  std::unordered_map<std::string, int64_t> column_index_;
  Vector objective_;
  double objective_offset_ = 0.0;
  std::vector<Triplet> triplets_;
  std::string rhs_set_;
  std::string range_set_;
  Vector lower_;
  Vector upper_;
  std::vector<bool> lower_set_;
};

inline std::string FormatDouble(double v) {
  if (v == kInf) return "1e+30";
  if (v == -kInf) return "-1e+30";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace internal

// Parses an MPS model. Supported sections: NAME, OBJSENSE, ROWS (N/L/G/E),
// COLUMNS (with integer MARKER blocks), RHS, RANGES, BOUNDS (LO UP FX FR MI PL
// BV, plus LI/UI as relaxed integer bounds), ENDATA. Section headers are
// case-insensitive; row and bound keywords are matched exactly. L rows are
// negated into G form, ranged rows are split into two G rows, and an RHS
// entry on the objective row becomes objective_offset = -value. Recoverable
// oddities are appended to `warnings` when given.
inline LpProblem ParseMps(std::string_view text, MpsDialect dialect = {},
                          std::vector<std::string>* warnings = nullptr) {
  return internal::MpsReader(text, dialect, warnings).Parse();
}

// Free-format MPS for `problem` (inequalities as G rows). Deterministic:
// identical problems give identical bytes.
inline std::string WriteMps(const LpProblem& problem) {
  using internal::FormatDouble;
  const int64_t n = problem.num_variables();
  auto var_name = [&](int64_t j) {
    return problem.variable_names.empty() ? "C" + std::to_string(j)
                                          : problem.variable_names[j];
  };
  auto ineq_name = [&](int64_t i) {
    return problem.ineq_row_names.empty() ? "G" + std::to_string(i)
                                          : problem.ineq_row_names[i];
  };
  auto eq_name = [&](int64_t i) {
    return problem.eq_row_names.empty() ? "E" + std::to_string(i)
                                        : problem.eq_row_names[i];
  };
  const double sense = problem.maximize ? -1.0 : 1.0;
  std::string out;
  out += "NAME " + (problem.name.empty() ? std::string("PROBLEM") : problem.name) +
         "\n";
  if (problem.maximize) out += "OBJSENSE\n    MAX\n";
  out += "ROWS\n N COST\n";
  for (int64_t i = 0; i < problem.num_ineq(); ++i) {
    out += " G " + ineq_name(i) + "\n";
  }
  for (int64_t i = 0; i < problem.num_eq(); ++i) out += " E " + eq_name(i) + "\n";
  out += "COLUMNS\n";
  const SparseMatrix& g = problem.ineq_matrix;
  const SparseMatrix& a = problem.eq_matrix;
  for (int64_t j = 0; j < n; ++j) {
    const std::string col = var_name(j);
    bool any = false;
    if (problem.objective[j] != 0.0) {
      out += "    " + col + " COST " +
             FormatDouble(sense * problem.objective[j]) + "\n";
      any = true;
    }
    if (j < g.cols()) {
      for (int64_t k = g.col_start()[j]; k < g.col_start()[j + 1]; ++k) {
        out += "    " + col + " " + ineq_name(g.row_index_by_col()[k]) + " " +
               FormatDouble(g.values_by_col()[k]) + "\n";
        any = true;
      }
    }
    if (j < a.cols()) {
      for (int64_t k = a.col_start()[j]; k < a.col_start()[j + 1]; ++k) {
        out += "    " + col + " " + eq_name(a.row_index_by_col()[k]) + " " +
               FormatDouble(a.values_by_col()[k]) + "\n";
        any = true;
      }
    }
    // Keep empty columns visible to the reader.
    if (!any) out += "    " + col + " COST 0\n";
  }
  out += "RHS\n";
  if (problem.objective_offset != 0.0) {
    out += "    RHS COST " + FormatDouble(-sense * problem.objective_offset) +
           "\n";
  }
  for (int64_t i = 0; i < problem.num_ineq(); ++i) {
    if (problem.ineq_rhs[i] != 0.0) {
      out += "    RHS " + ineq_name(i) + " " + FormatDouble(problem.ineq_rhs[i]) +
             "\n";
    }
  }
  for (int64_t i = 0; i < problem.num_eq(); ++i) {
    if (problem.eq_rhs[i] != 0.0) {
      out += "    RHS " + eq_name(i) + " " + FormatDouble(problem.eq_rhs[i]) +
             "\n";
    }
  }
  std::string bounds;
  for (int64_t j = 0; j < n; ++j) {
    const double l = problem.lower_bounds[j];
    const double u = problem.upper_bounds[j];
    const std::string col = var_name(j);
    if (l == u) {
      bounds += " FX BND " + col + " " + FormatDouble(l) + "\n";
      continue;
    }
    if (l == -kInf && u == kInf) {
      bounds += " FR BND " + col + "\n";
      continue;
    }
    if (l == -kInf) {
      bounds += " MI BND " + col + "\n";
    } else if (l != 0.0) {
      bounds += " LO BND " + col + " " + FormatDouble(l) + "\n";
    }
    if (u != kInf) bounds += " UP BND " + col + " " + FormatDouble(u) + "\n";
  }
  if (!bounds.empty()) out += "BOUNDS\n" + bounds;
  out += "ENDATA\n";
  return out;
}

}  // namespace pdlp

#endif  // PDLP_MPS_HPP
