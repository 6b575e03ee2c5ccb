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

#ifndef KENVERIFY_SCENARIOS_HPP
#define KENVERIFY_SCENARIOS_HPP

#include "context.hpp"
#include "warped.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kv::scenarios {

/// Either a builtin ambient name or an inline structure (expression text).
struct AmbientDef
{
  std::string builtin;
  std::string name;
  std::vector<std::string> coordinates;
  std::vector<std::string> phi; // row-major
  std::vector<std::string> xi;
  std::vector<std::string> eta;
  std::vector<std::string> metric; // row-major
};

struct Sampling
{
  enum class Mode
  {
    SeededBox,
    FixedList
  };
  Mode mode = Mode::SeededBox;
  std::vector<std::pair<double, double>> bounds; // per parameter
  std::vector<std::vector<double>> points;       // fixed-list mode
  int count = 100;
  std::uint64_t seed = 42;
  std::vector<std::pair<double, double>> ambient_bounds; // per coordinate
};

struct Expectation
{
  std::vector<std::string> fail; // check ids that must fail
  bool others_pass = true;
};

struct Scenario
{
  std::string name;
  std::string description;
  AmbientDef ambient_def;
  manifold::AmbientPtr ambient;
  immersion::ImmersionPtr immersion;
  SplitSpec split;
  std::optional<warped::WarpSpec> warp;
  Sampling sampling;
  std::map<std::string, double> tolerances;
  std::optional<Expectation> expect;
};

/// "example1", "example2", "example2_cr", "example2_perturbed",
/// "example2_paper_literal". theta0 applies to example2 only (default pi/4)
/// and must lie in (0, pi/2).
Scenario builtin(std::string_view name, std::optional<double> theta0 = std::nullopt);
std::vector<std::string> builtin_names();

/// Parses and validates a scenario document. Throws ParseError for malformed
/// JSON or expressions and ValidationError listing every violation.
Scenario load(std::string_view text);
std::string serialize(const Scenario &s);

/// Parameter points for the scenario (seeded box or fixed list).
std::vector<Vec> parameter_points(const Scenario &s, std::optional<std::uint64_t> seed = std::nullopt,
                                  std::optional<int> count = std::nullopt);
/// Ambient chart points for the structure checks.
std::vector<Vec> ambient_points(const Scenario &s, std::optional<std::uint64_t> seed = std::nullopt,
                                std::optional<int> count = std::nullopt);

} // namespace kv::scenarios

#endif // KENVERIFY_SCENARIOS_HPP
