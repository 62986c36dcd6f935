// Copyright 2026 The bioleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BIOLEAK_ERROR_H_
#define BIOLEAK_ERROR_H_

#include <stdexcept>
#include <string>

namespace bioleak {

enum class ErrorCode {
  kInvalidArgument,
  kDomain,          // numeric argument outside the mathematical domain
  kPrecondition,    // outside a closed form's regime
  kLengthMismatch,
  kEmptySample,
  kSizeLimit,       // exhaustive enumeration would be too large
  kBudgetExceeded,
  kRankDeficient,
  kUnknownUser,
  kDuplicateUser,
  kConfig,
  kFormat,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

// The single exception type thrown by the library. The C API maps `code()`
// onto its status enumeration.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bioleak

#endif  // BIOLEAK_ERROR_H_
