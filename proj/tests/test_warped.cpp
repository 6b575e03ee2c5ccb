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
#include "support.hpp"
#include "warped.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace kv;
using kv::testing::make_context;
using kv::testing::vec;

TEST(Warped, GradientNormOfExponentialWarping)
{
  const auto s = scenarios::builtin("example2");
  warped::WarpSpec w = *s.warp;
  w.warping = expr::parse("exp(2*z)");
  EXPECT_NEAR(warped::warp_gradient_norm(*s.immersion, w, vec({0.1, 0.2, 0.3, 0.4, 0.3})), 4.0, 1e-13);
  EXPECT_NEAR(warped::warp_gradient_norm(*s.immersion, *s.warp, vec({0.1, 0.2, 0.3, 0.4, -0.3})), 1.0, 1e-13);
}

TEST(Warped, NonPositiveWarpingIsRejected)
{
  const auto s = scenarios::builtin("example2");
  warped::WarpSpec w = *s.warp;
  w.warping = expr::parse("z");
  EXPECT_THROW(warped::warp_at(*s.immersion, w, vec({0, 0, 0, 0, -0.2})), Error);
  const auto v = warped::warp_at(*s.immersion, w, vec({0, 0, 0, 0, 0.5}));
  EXPECT_DOUBLE_EQ(v.f, 0.5);
}

TEST(Warped, BoundFormula)
{
  const double t = std::numbers::pi / 3;
  const double expected = 4.0 * 2 * (1 / std::pow(std::sin(t), 2) + 1 / std::pow(std::tan(t), 2)) * (3.0 - 1.0);
  EXPECT_NEAR(warped::h_norm_bound(2, t, 3.0), expected, 1e-12);
  EXPECT_NEAR(warped::h_norm_bound(1, t, 1.0), 0.0, 1e-15);
}

TEST(Warped, AdaptedFramesAreOrthonormal)
{
  const double t = std::numbers::pi / 6;
  const auto s = scenarios::builtin("example2", t);
  const auto pg = immersion::evaluate_point(*s.immersion, vec({0.3, -0.1, 0.6, 0.2, 0.4}));
  const auto fr = warped::build_adapted_frames(pg, s.split, t);
  EXPECT_EQ(fr.t, 1);
  EXPECT_EQ(fr.s, 1);
  EXPECT_LT(fr.orthonormality, 1e-12);
  const auto hn = warped::h_norm(pg, fr);
  EXPECT_NEAR(hn.lhs, 0.0, 1e-20);
  EXPECT_THROW(warped::build_adapted_frames(pg, s.split, std::numbers::pi / 2), GeometryError);
}

TEST(Warped, BatteryPassesOnExample2)
{
  for (double t : {std::numbers::pi / 6, std::numbers::pi / 3})
  {
    const auto s = scenarios::builtin("example2", t);
    const auto ctx = make_context(s);
    const auto res = warped::warped_checks(ctx, *s.warp, distribution::classify(ctx));
    for (const auto &r : res.records)
      if (!r.diagnostic && !r.skipped)
      {
        EXPECT_TRUE(r.pass) << r.id << " " << r.max_residual << " " << r.note;
      }
    ASSERT_TRUE(res.inequality);
    EXPECT_GE(res.inequality->min_margin, -1e-9);
    EXPECT_EQ(res.inequality->equality_verdict, "equality");
  }
}

TEST(Warped, CurvedInvariantFactorGivesStrictInequality)
{
  const auto s = scenarios::load(R"json({
    "name": "bend",
    "ambient": "example2_kenmotsu",
    "immersion": {"parameters": ["u1", "u2", "u3", "u4", "z"],
                  "map": ["u1", "0.3*(u1^2 - u2^2)", "u3", "0", "u2", "0.6*u1*u2", "0", "u4", "z"]},
    "split": {"D": ["u1", "u2"], "D_theta": ["u3", "u4"], "xi": "z"},
    "warp": {"factor1": ["u1", "u2", "z"], "factor2": ["u3", "u4"], "warping": "exp(z)"},
    "sampling": {"mode": "seeded-box", "count": 20, "seed": 3,
                 "bounds": {"u1": [-1, 1], "u2": [-1, 1], "u3": [-1, 1], "u4": [-1, 1], "z": [-0.5, 0.5]}}
  })json");
  const auto ctx = make_context(s, 20);
  const auto cls = distribution::classify(ctx);
  EXPECT_EQ(cls.kind, distribution::Kind::ContactCR);
  const auto res = warped::warped_checks(ctx, *s.warp, cls);
  for (const auto &r : res.records)
    if (!r.diagnostic && !r.skipped)
    {
      EXPECT_TRUE(r.pass) << r.id << " " << r.max_residual;
    }
  ASSERT_TRUE(res.inequality);
}

TEST(Warped, XiInSecondFactorIsTrivial)
{
  auto s = scenarios::builtin("example2");
  s.warp->factor1 = {0, 1};
  s.warp->factor2 = {2, 3, 4};
  s.warp->warping = expr::parse("1");
  const auto ctx = make_context(s, 10);
  const auto res = warped::warped_checks(ctx, *s.warp, distribution::classify(ctx));
  bool seen = false;
  for (const auto &r : res.records)
    seen = seen || r.id == "xi_case1_trivial";
  EXPECT_TRUE(seen);
}
