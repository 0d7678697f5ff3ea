// Copyright 2026 The cohmap Authors
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

#ifndef COHMAP_ERRORS_H
#define COHMAP_ERRORS_H

#include <stdexcept>
#include <string>

namespace cohmap {

/// Bad input: out-of-range parameter, malformed string, wrong shape.
/// The CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Two objects that must share a dimension do not.
class DimensionMismatch : public ValidationError {
   public:
    DimensionMismatch(const std::string &what, std::size_t expected, std::size_t got)
        : ValidationError(what + ": expected dimension " + std::to_string(expected) + ", got " +
                          std::to_string(got)) {
    }
};

/// An equation has no solution in the requested domain.
class NoSolution : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

/// An exact enumeration would exceed its size cap.
class EnumerationTooLarge : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

/// A result violated an invariant that the model guarantees (e.g. a wrong
/// conclusive answer in the ideal Hidden Matching protocol). Exit code 2.
class InvariantViolation : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

}  // namespace cohmap

#endif  // COHMAP_ERRORS_H
