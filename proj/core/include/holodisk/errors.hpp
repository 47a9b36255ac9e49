// Copyright 2026 The holodisk Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace holodisk {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on caller-supplied data does not hold (non-finite samples,
/// singular frames, points outside the disk, malformed configuration).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to reach its tolerance: Newton did not
/// converge, a rank decision was ambiguous, a grid was too coarse.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Two independently computed quantities that must agree do not.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace holodisk
