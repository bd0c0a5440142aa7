// Copyright 2026 The rtbeat Authors
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

#ifndef RTBEAT__ERROR_HPP_
#define RTBEAT__ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rtbeat {

// Precondition violations on user-supplied parameters (empty meter set,
// inverted tempo range, zero particles, ...).
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or out-of-range file content. Carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &what, std::size_t line)
  : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class MissingHeaderError : public ParseError {
public:
  using ParseError::ParseError;
};

class MalformedRowError : public ParseError {
public:
  using ParseError::ParseError;
};

class ValueRangeError : public ParseError {
public:
  using ParseError::ParseError;
};

class NonMonotoneError : public ParseError {
public:
  using ParseError::ParseError;
};

// File could not be opened or written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace rtbeat

#endif  // RTBEAT__ERROR_HPP_
