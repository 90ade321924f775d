// Copyright 2026 The CayleyLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CAYLEYLAB_ERRORS_HPP
#define CAYLEYLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cayleylab {

/// Failure categories raised by the library. The CLI maps these onto exit
/// codes (validation 2, search exhaustion 3, numerical regime 4).
enum class ErrorKind {
  kValidation,
  kNonNormalInput,
  kConvergenceFailure,
  kDuplicateNode,
  kIllConditioned,
  kSingularPhase,
  kResampleBudgetExceeded,
  kTooLarge,
  kTooManyTrajectories,
  kSearchExhausted,
  kInvalidRegime,
};

inline const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation: return "ValidationError";
    case ErrorKind::kNonNormalInput: return "NonNormalInput";
    case ErrorKind::kConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::kDuplicateNode: return "DuplicateNode";
    case ErrorKind::kIllConditioned: return "IllConditioned";
    case ErrorKind::kSingularPhase: return "SingularPhase";
    case ErrorKind::kResampleBudgetExceeded: return "ResampleBudgetExceeded";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kTooManyTrajectories: return "TooManyTrajectories";
    case ErrorKind::kSearchExhausted: return "SearchExhausted";
    case ErrorKind::kInvalidRegime: return "InvalidRegime";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::kValidation, what);
}

}  // namespace cayleylab

#endif  // CAYLEYLAB_ERRORS_HPP
