// Copyright 2026 The qfp developers
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

namespace qfp {

/// Malformed input text (circuit JSON/QASM, feature CSV, model files).
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad configuration or command usage (maps to process exit code 1).
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An oracle/verification suite failed (exit code 2).
class VerifyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Filesystem or input-data failure (exit code 3).
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace qfp
