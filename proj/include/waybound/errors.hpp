// Copyright 2026 The Waybound Authors
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

#ifndef WAYBOUND_ERRORS_HPP_
#define WAYBOUND_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace waybound {

/// Shapes or labels that do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical precondition (Hermiticity, unitarity, a conservation residual)
/// was violated. The message names the residual and its value.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A bound whose formula has a vanishing denominator.
class UndefinedBoundError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A computation produced a non-finite value. The message carries the
/// offending input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration or command-line input.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace waybound

#endif  // WAYBOUND_ERRORS_HPP_
