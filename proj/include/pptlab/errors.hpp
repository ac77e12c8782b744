// Copyright 2026 The pptlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PPTLAB_ERRORS_HPP
#define PPTLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pptlab {

enum class ErrorKind {
  NonConvergence,
  SingularMatrix,
  DimensionMismatch,
  IndexOutOfRange,
  InvalidParam,
  RejectionBudgetExceeded,
  ConfigError,
  ParseError,
  IoError,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidParam: return "InvalidParam";
    case ErrorKind::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Single exception type for the library; `kind()` tells callers what failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pptlab

#endif  // PPTLAB_ERRORS_HPP
