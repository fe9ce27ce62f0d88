// Copyright 2026 The Liouville Authors
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

#ifndef LIOUVILLE_ERRORS_HPP
#define LIOUVILLE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace liouville {

// Two failure classes with distinct handling downstream: invalid arguments
// are caller bugs (CLI exit 2), numerical failures are data-dependent
// breakdowns of an otherwise valid computation (CLI exit 3).
enum class ErrorKind {
  kInvalidArgument,
  kNumerical,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message),
        kind_(kind),
        code_(std::move(code)) {}

  ErrorKind kind() const { return kind_; }

  // Stable machine-readable identifier, e.g. "epsilon-exceeds-margin".
  const std::string& code() const { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

[[noreturn]] inline void throw_invalid(const std::string& code,
                                       const std::string& message) {
  throw Error(ErrorKind::kInvalidArgument, code, message);
}

[[noreturn]] inline void throw_numerical(const std::string& code,
                                         const std::string& message) {
  throw Error(ErrorKind::kNumerical, code, message);
}

}  // namespace liouville

#endif  // LIOUVILLE_ERRORS_HPP
