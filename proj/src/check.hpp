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

#ifndef KENVERIFY_CHECK_HPP
#define KENVERIFY_CHECK_HPP

#include "jet2.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kv {

/// One verified property, reduced over all of its samples.
struct CheckRecord
{
  std::string id;
  std::string anchor; // human label of the identity being tested
  std::string group;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool diagnostic = false; // reported, never part of the verdict
  bool skipped = false;
  bool expected_fail = false;
  std::string note;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> worst_point;
  std::vector<std::pair<std::string, double>> values; // extra named scalars

  double value(std::string_view name, double fallback = std::numeric_limits<double>::quiet_NaN()) const;
};

/// Default tolerance of a check id and whether --tol-scale applies to it.
struct ToleranceInfo
{
  double value;
  bool scaled;
};

ToleranceInfo default_tolerance(std::string_view id);
bool is_known_check(std::string_view id);

/// Per-scenario tolerance overrides (by check id) plus a global scale.
struct Tolerances
{
  std::map<std::string, double> overrides;
  double scale = 1.0;

  double get(std::string_view id) const;
};

/// Running max/mean of non-negative residuals with the arg-max point.
class Accumulator
{
public:
  void add(double residual, const Vec &at);
  void add(double residual) { add(residual, Vec()); }
  std::size_t count() const { return count_; }
  double max() const { return max_; }

  /// pass iff every residual was finite and max <= tolerance.
  CheckRecord finish(std::string id, std::string anchor, std::string group, double tolerance,
                     std::uint64_t seed = 0) const;

private:
  double max_ = 0.0;
  double sum_ = 0.0;
  std::size_t count_ = 0;
  bool finite_ = true;
  Vec worst_;
};

CheckRecord skipped_record(std::string id, std::string anchor, std::string group, std::string reason);

/// 64-bit FNV-1a, used to derive per-check streams from a scenario seed.
std::uint64_t stream_seed(std::uint64_t seed, std::string_view label);

using Rng = std::mt19937_64;

/// Standard normal coefficients, for random directions in a coordinate subspace.
Vec random_coefficients(Rng &rng, const std::vector<int> &indices, int n);

} // namespace kv

#endif // KENVERIFY_CHECK_HPP
