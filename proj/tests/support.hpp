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

#ifndef KENVERIFY_TESTS_SUPPORT_HPP
#define KENVERIFY_TESTS_SUPPORT_HPP

#include "context.hpp"
#include "immersion.hpp"
#include "manifold.hpp"
#include "scenarios.hpp"

#include <string>
#include <vector>

namespace kv::testing {

inline Context make_context(const scenarios::Scenario &s, int count = 30, std::uint64_t seed = 42,
                            bool kenmotsu = true)
{
  Context ctx;
  ctx.imm = s.immersion;
  ctx.split = s.split;
  ctx.seed = seed;
  ctx.kenmotsu_verified = kenmotsu;
  for (const auto &u : scenarios::parameter_points(s, seed, count))
    ctx.points.push_back(immersion::evaluate_point(*s.immersion, u));
  return ctx;
}

inline std::vector<expr::Expr> parse_all(const std::vector<std::string> &texts)
{
  std::vector<expr::Expr> out;
  for (const auto &t : texts)
    out.push_back(expr::parse(t));
  return out;
}

inline Vec vec(std::initializer_list<double> v)
{
  Vec out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v)
    out(i++) = x;
  return out;
}

} // namespace kv::testing

#endif // KENVERIFY_TESTS_SUPPORT_HPP
