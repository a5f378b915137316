// Copyright 2026 The lodnls Authors
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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lodnls {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kCoefficientViolation,
  kSolverFailure,
  kPatchDegenerate,
  kStepFailure,
  kStartingStepFailure,
  kConfig,
  kIo,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when the implicit nonlinear solve of a time step does not converge.
/// Carries the fixed-point increment history so callers can report it.
class StepFailure : public Error {
 public:
  StepFailure(ErrorCode code, const std::string& message, long step,
              std::vector<double> history)
      : Error(code, message), step_(step), history_(std::move(history)) {}

  long step() const noexcept { return step_; }
  const std::vector<double>& history() const noexcept { return history_; }

 private:
  long step_;
  std::vector<double> history_;
};

[[noreturn]] void throw_error(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw_error(code, message);
}

}  // namespace lodnls
