// Copyright 2026 The ncospan Authors
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

#ifndef NCOSPAN_ERROR_HPP_
#define NCOSPAN_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ncospan {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (bad JSON, wrong types, unknown keys).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a data-model invariant. The message names
// the invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A solver pipeline could not produce a feasible answer.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace ncospan

#endif  // NCOSPAN_ERROR_HPP_
