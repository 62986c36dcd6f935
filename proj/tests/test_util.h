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

#ifndef BIOLEAK_TESTS_TEST_UTIL_H_
#define BIOLEAK_TESTS_TEST_UTIL_H_

#include <optional>

#include "bioleak/error.h"

namespace bioleak::testing {

// Code of the bioleak::Error thrown by fn, or nullopt if none was thrown.
template <typename Fn>
std::optional<ErrorCode> ErrorOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace bioleak::testing

#endif  // BIOLEAK_TESTS_TEST_UTIL_H_
