// Copyright 2026 The staircase-dp Authors
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

#ifndef STAIRCASE_CORE_ERRORS_HPP
#define STAIRCASE_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace staircase {

// Error categories; mirrored one-to-one by the C API status codes.
enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kDegenerateBand,
  kDivergentSeries,
  kDecompositionFailure,
  kPreconditionFailed,
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_error(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool ok, ErrorCode code, const std::string& msg) {
  if (!ok) throw_error(code, msg);
}

}  // namespace staircase

#endif  // STAIRCASE_CORE_ERRORS_HPP
