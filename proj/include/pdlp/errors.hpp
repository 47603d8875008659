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

#ifndef PDLP_ERRORS_HPP
#define PDLP_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pdlp {

enum class ErrorCode {
  kDimensionMismatch,
  kInconsistentBounds,
  kNonFiniteData,
  kSyntaxError,
  kDuplicateRow,
  kDuplicateColumn,
  kUnknownRowReference,
  kUnknownColumnReference,
  kIntegerSectionRejected,
  kSpecInvalid,
  kInvalidRadius,
  kNonPositiveInput,
  kNonPositive,
  kNotACertificate,
  kNonFiniteIterate,
  kStepSizeUnderflow,
  kConfigInvalid,
  kIo,
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInconsistentBounds: return "InconsistentBounds";
    case ErrorCode::kNonFiniteData: return "NonFiniteData";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kDuplicateRow: return "DuplicateRow";
    case ErrorCode::kDuplicateColumn: return "DuplicateColumn";
    case ErrorCode::kUnknownRowReference: return "UnknownRowReference";
    case ErrorCode::kUnknownColumnReference: return "UnknownColumnReference";
    case ErrorCode::kIntegerSectionRejected: return "IntegerSectionRejected";
    case ErrorCode::kSpecInvalid: return "SpecInvalid";
    case ErrorCode::kInvalidRadius: return "InvalidRadius";
    case ErrorCode::kNonPositiveInput: return "NonPositiveInput";
    case ErrorCode::kNonPositive: return "NonPositive";
    case ErrorCode::kNotACertificate: return "NotACertificate";
    case ErrorCode::kNonFiniteIterate: return "NonFiniteIterate";
    case ErrorCode::kStepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

// Every failure in the library is reported through this exception. When
// several problems are found at once (validation), `issues()` lists each one
// and `code()` is the code of the first.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code),
        issues_{{code, message}} {}

  explicit Error(std::vector<std::pair<ErrorCode, std::string>> issues)
      : std::runtime_error(Summarize(issues)),
        code_(issues.front().first),
        issues_(std::move(issues)) {}

  ErrorCode code() const { return code_; }
  const std::vector<std::pair<ErrorCode, std::string>>& issues() const {
    return issues_;
  }
  bool Has(ErrorCode code) const {
    for (const auto& [c, _] : issues_) {
      if (c == code) return true;
    }
    return false;
  }

 private:
  static std::string Summarize(
      const std::vector<std::pair<ErrorCode, std::string>>& issues) {
    std::string out;
    for (const auto& [code, message] : issues) {
      if (!out.empty()) out += "; ";
      out += std::string(ErrorCodeName(code)) + ": " + message;
    }
    return out;
  }

  ErrorCode code_;
  std::vector<std::pair<ErrorCode, std::string>> issues_;
};

}  // namespace pdlp

#endif  // PDLP_ERRORS_HPP
