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

#include "error.hpp"
#include "scenarios.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace kv;
using namespace kv::scenarios;

namespace {

const char *valid_doc = R"json({
  "name": "custom",
  "ambient": "example2_kenmotsu",
  "immersion": {"parameters": ["a", "b", "c", "d", "z"],
                "map": ["a", "0", "c", "0", "b", "0", "0", "d", "z"]},
  "split": {"D": ["a", "b"], "D_theta": ["c", "d"], "xi": "z"},
  "sampling": {"mode": "seeded-box", "count": 10, "seed": 1,
               "bounds": {"a": [-1, 1], "b": [-1, 1], "c": [-1, 1], "d": [-1, 1], "z": [-0.5, 0.5]}}
})json";

std::vector<std::string> violations_of(const std::string &doc)
{
  try
  {
    load(doc);
  }
  catch (const ValidationError &e)
  {
    return e.violations();
  }
  return {};
}

bool mentions(const std::vector<std::string> &v, const std::string &needle)
{
  for (const auto &s : v)
    if (s.find(needle) != std::string::npos)
      return true;
  return false;
}

} // namespace

TEST(Scenarios, EveryBuiltinValidatesAndRoundTrips)
{
  for (const auto &name : builtin_names())
  {
    const Scenario s = builtin(name);
    const std::string text = serialize(s);
    const Scenario back = load(text);
    EXPECT_EQ(serialize(back), text) << name;
    EXPECT_EQ(back.name, s.name);
    EXPECT_EQ(back.split.d, s.split.d);
    EXPECT_EQ(back.split.theta, s.split.theta);
    EXPECT_EQ(back.split.xi, s.split.xi);
    EXPECT_EQ(back.warp.has_value(), s.warp.has_value());
    EXPECT_EQ(parameter_points(back), parameter_points(s)) << name;
  }
  const Scenario t = builtin("example2", std::numbers::pi / 3);
  EXPECT_EQ(serialize(load(serialize(t))), serialize(t));
  EXPECT_EQ(t.name, "example2(theta0=pi/3)");
}

TEST(Scenarios, BuiltinArgumentsAreChecked)
{
  EXPECT_THROW(builtin("example3"), Error);
  EXPECT_THROW(builtin("example2", 0.0), Error);
  EXPECT_THROW(builtin("example2", std::numbers::pi / 2), Error);
  EXPECT_THROW(builtin("example1", 0.3), Error);
  EXPECT_NO_THROW(builtin("example2", 0.2));
}

TEST(Scenarios, LoadsACustomImmersionOnABuiltinAmbient)
{
  const Scenario s = load(valid_doc);
  EXPECT_EQ(s.immersion->n(), 5);
  EXPECT_TRUE(s.tolerances.empty());
  EXPECT_EQ(parameter_points(s).size(), 10u);
}

TEST(Scenarios, TargetLengthMismatchNamesBothNumbers)
{
  std::string doc = valid_doc;
  doc.replace(doc.rfind(R"("d", "z"])"), 9, R"("d"])");
  const auto v = violations_of(doc);
  ASSERT_FALSE(v.empty());
  EXPECT_TRUE(mentions(v, "8") && mentions(v, "9")) << ::testing::PrintToString(v);
}

TEST(Scenarios, WarpingMayNotDependOnTheSecondFactor)
{
  std::string doc = valid_doc;
  doc.insert(doc.rfind('}'), R"json(, "warp": {"factor1": ["a", "b", "z"], "factor2": ["c", "d"], "warping": "exp(z)*c"})json");
  const auto v = violations_of(doc);
  EXPECT_TRUE(mentions(v, "warping")) << (v.empty() ? "no violations" : v.front());
}

TEST(Scenarios, EveryViolationIsListed)
{
  const auto v = violations_of(R"json({
    "name": "broken",
    "ambient": "no_such_ambient",
    "immersion": {"parameters": ["a", "a"], "map": ["a"]},
    "split": {"D": ["q"], "D_theta": [], "xi": "a"},
    "sampling": {"mode": "sideways"},
    "extra": 1
  })json");
  EXPECT_GE(v.size(), 4u);
  EXPECT_TRUE(mentions(v, "no_such_ambient"));
  EXPECT_TRUE(mentions(v, "extra"));
}

TEST(Scenarios, MalformedJsonIsAParseError)
{
  try
  {
    load("{\"name\": ");
    FAIL() << "expected a parse error";
  }
  catch (const ParseError &e)
  {
    EXPECT_GT(e.offset(), 0u);
  }
}

TEST(Scenarios, InlineAmbientMustBeOddDimensional)
{
  const auto v = violations_of(R"json({
    "name": "even",
    "ambient": {"name": "plane", "coordinates": ["x", "y"],
                "phi": [["0", "1"], ["-1", "0"]], "xi": ["0", "0"], "eta": ["0", "0"],
                "metric": [["1", "0"], ["0", "1"]]},
    "immersion": {"parameters": ["a"], "map": ["a", "0"]},
    "split": {"D": [], "D_theta": ["a"]},
    "sampling": {"mode": "fixed-list", "points": [[0.1]]}
  })json");
  EXPECT_TRUE(mentions(v, "odd"));
}

TEST(Scenarios, FixedListSampling)
{
  std::string doc = valid_doc;
  const auto at = doc.find("\"sampling\"");
  doc = doc.substr(0, at) + R"json("sampling": {"mode": "fixed-list", "points": [[0, 0, 0, 0, 0], [0.1, 0.2, 0.3, 0.4, 0.5]]}})json";
  const Scenario s = load(doc);
  const auto pts = parameter_points(s);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_DOUBLE_EQ(pts[1](4), 0.5);
}
