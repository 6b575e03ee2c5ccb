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

#ifndef KENVERIFY_CONTEXT_HPP
#define KENVERIFY_CONTEXT_HPP

#include "check.hpp"
#include "immersion.hpp"

#include <cstdint>
#include <vector>

namespace kv {

/// Parameter-index split TM = D + D^theta + <xi>. Each subbundle is spanned by
/// the pushforwards of the listed coordinate fields.
struct SplitSpec
{
  std::vector<int> d;
  std::vector<int> theta;
  int xi = -1;

  std::vector<int> d_and_xi() const
  {
    auto v = d;
    if (xi >= 0)
      v.push_back(xi);
    return v;
  }
};

/// Sampled geometry shared by the distribution and warped checks.
struct Context
{
  immersion::ImmersionPtr imm;
  std::vector<immersion::PointGeometry> points;
  SplitSpec split;
  Tolerances tol;
  std::uint64_t seed = 0;
  bool kenmotsu_verified = false;
  int tuples = 50;       // sampled vector tuples per identity
  int directions = 20;   // random directions per point for slant constancy
  int duality_points = 20;

  const immersion::PointGeometry &point(std::size_t k) const { return points[k % points.size()]; }
  Rng rng(std::string_view label) const { return Rng(stream_seed(seed, label)); }
};

} // namespace kv

#endif // KENVERIFY_CONTEXT_HPP
