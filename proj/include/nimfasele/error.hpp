// Copyright 2026 The Nimfasele Authors
//
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nimfasele {

enum class ErrorCode {
  kDecode,
  kFormat,
  kInvalidArgument,
  kInvalidSentence,
  kAlignment,
  kEmptyCorpus,
  kNumeric,
  kTraining,
  kModelFormat,
  kNotComparable,
  kIo,
};

inline const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDecode: return "decode";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidSentence: return "invalid-sentence";
    case ErrorCode::kAlignment: return "alignment";
    case ErrorCode::kEmptyCorpus: return "empty-corpus";
    case ErrorCode::kNumeric: return "numeric";
    case ErrorCode::kTraining: return "training";
    case ErrorCode::kModelFormat: return "model-format";
    case ErrorCode::kNotComparable: return "not-comparable";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

// All library failures are reported through this exception type. `line` is
// 1-based and 0 when the error is not tied to an input line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0)
      : std::runtime_error(Format(code, message, line)),
        code_(code),
        line_(line) {}

  ErrorCode code() const { return code_; }
  std::size_t line() const { return line_; }

 private:
  static std::string Format(ErrorCode code, const std::string& message,
                            std::size_t line) {
    std::string out = ErrorCodeName(code);
    if (line != 0) out += " error at line " + std::to_string(line);
    else out += " error";
    out += ": ";
    out += message;
    return out;
  }

  ErrorCode code_;
  std::size_t line_;
};

}  // namespace nimfasele
