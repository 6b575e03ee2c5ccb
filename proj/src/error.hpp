/*
 * Copyright (c) 2026 The kenverify Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef KENVERIFY_ERROR_HPP
#define KENVERIFY_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kv {

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Malformed expression text. offset is a byte offset into the source string.
class ParseError : public Error
{
public:
  ParseError(const std::string &message, std::size_t offset, std::string expected)
    : Error(message + " at offset " + std::to_string(offset) +
            (expected.empty() ? std::string() : " (expected " + expected + ")")),
      offset_(offset), expected_(std::move(expected))
  {
  }

  std::size_t offset() const noexcept { return offset_; }
  const std::string &expected() const noexcept { return expected_; }

private:
  std::size_t offset_;
  std::string expected_;
};

// log of a non-positive value, sqrt of a negative value, division by zero, ...
class DomainError : public Error
{
public:
  DomainError(const std::string &what, std::string subexpression)
    : Error(what + " in '" + subexpression + "'"), subexpression_(std::move(subexpression))
  {
  }

  const std::string &subexpression() const noexcept { return subexpression_; }

private:
  std::string subexpression_;
};

// Singular metric, non-normal vector handed to a shape operator, degenerate angle, ...
class GeometryError : public Error
{
public:
  using Error::Error;
};

class RankError : public GeometryError
{
public:
  RankError(const std::string &what, double smallest_singular_value)
    : GeometryError(what + " (smallest singular value " + std::to_string(smallest_singular_value) + ")"),
      sigma_(smallest_singular_value)
  {
  }

  double smallest_singular_value() const noexcept { return sigma_; }

private:
  double sigma_;
};

// Scenario validation collects every violation before throwing.
class ValidationError : public Error
{
public:
  explicit ValidationError(std::vector<std::string> violations)
    : Error(join(violations)), violations_(std::move(violations))
  {
  }

  const std::vector<std::string> &violations() const noexcept { return violations_; }

private:
  static std::string join(const std::vector<std::string> &v)
  {
    std::string out = "invalid scenario:";
    for (const auto &s : v)
      out += "\n  - " + s;
    return out;
  }

  std::vector<std::string> violations_;
};

} // namespace kv

#endif // KENVERIFY_ERROR_HPP
