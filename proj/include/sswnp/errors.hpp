// Copyright 2026 The sswnp Authors
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

#ifndef SSWNP__ERRORS_HPP_
#define SSWNP__ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sswnp
{

/// Operand shapes are incompatible with the requested operation.
class ShapeError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// A NaN or Inf appeared where finite values are required.
class NumericalError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (corpus, checkpoint, config, log).
class ParseError : public std::runtime_error
{
public:
  ParseError(std::size_t line, const std::string & message)
  : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
  {
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Invalid configuration or data precondition (empty corpus, unknown key, bad range).
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace sswnp

#endif  // SSWNP__ERRORS_HPP_
