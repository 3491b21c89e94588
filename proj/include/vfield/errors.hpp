/*
 * errors.hpp
 * vfield library
 *
 * Copyright 2026 The vfield Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef VFIELD_ERRORS_HPP_
#define VFIELD_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace vfield {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function was evaluated outside the set where it is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Planner queried at a point excluded from free space (inside an obstacle).
class InvalidQuery : public Error {
 public:
  using Error::Error;
};

/// Coincident agents or a similar zero-length geometric configuration.
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

/// A construction-time invariant does not hold. The message names it.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario text. Carries the 1-based line when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace vfield

#endif  // VFIELD_ERRORS_HPP_
