// Copyright 2026 The cuspfill Authors.
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

#ifndef CUSPFILL_ERRORS_HPP_
#define CUSPFILL_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace cuspfill {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unparseable or out-of-range input (bad letters, empty relators, ...).
class MalformedInput : public Error {
 public:
  using Error::Error;
};

/// Mathematical structure violates an operation's requirements, e.g. two
/// peripheral subgroups that turn out to be conjugate.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Neither word-problem backend applies to a quotient presentation.
class UnsupportedQuotient : public Error {
 public:
  using Error::Error;
};

}  // namespace cuspfill

#endif  // CUSPFILL_ERRORS_HPP_
