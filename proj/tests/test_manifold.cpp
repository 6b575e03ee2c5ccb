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

#include "crosscheck.hpp"
#include "error.hpp"
#include "frames.hpp"
#include "manifold.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace kv;
using namespace kv::manifold;
using kv::testing::parse_all;

namespace {

Vec random_point(std::mt19937_64 &rng, int dim)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec p(dim);
  for (int i = 0; i < dim; ++i)
    p(i) = u(rng);
  return p;
}

} // namespace

TEST(Manifold, Example1AmbientIsFlatAndStandard)
{
  const auto amb = builtin_ambient("example1_r9");
  ASSERT_EQ(amb->dim(), 9);
  const auto s = evaluate_structure(*amb, Vec::Constant(9, 0.3));
  EXPECT_TRUE(s.metric.isIdentity(0.0));
  // phi d/dx_i = -d/dy_i, phi d/dy_i = d/dx_i
  for (int i = 0; i < 4; ++i)
  {
    EXPECT_EQ(s.phi(4 + i, i), -1.0);
    EXPECT_EQ(s.phi(i, 4 + i), 1.0);
  }
  for (int k = 0; k < 9; ++k)
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j)
        EXPECT_EQ(s.gamma(k, i, j), 0.0);
}

TEST(Manifold, Example2MetricValues)
{
  const auto amb = builtin_ambient("example2_kenmotsu");
  Vec p = Vec::Zero(9);
  EXPECT_TRUE(evaluate_structure(*amb, p).metric.isIdentity(1e-15));
  p(8) = 1.0;
  EXPECT_NEAR(evaluate_structure(*amb, p).metric(0, 0), std::exp(2.0), 1e-12);
}

TEST(Manifold, Example2ChristoffelByHand)
{
  const auto amb = builtin_ambient("example2_kenmotsu");
  Vec p = Vec::Zero(9);
  p(8) = 0.4;
  const auto g = christoffel(*amb, p);
  EXPECT_NEAR(g(0, 0, 8), 1.0, 1e-14);
  EXPECT_NEAR(g(8, 0, 0), -std::exp(0.8), 1e-14);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial)
  {
    const auto gg = christoffel(*amb, random_point(rng, 9));
    for (int k = 0; k < 9; ++k)
      for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j)
          EXPECT_EQ(gg(k, i, j), gg(k, j, i));
  }
}

TEST(Manifold, StructureAxiomsOnBuiltins)
{
  std::mt19937_64 rng(42);
  for (const char *name : {"example1_r9", "example2_kenmotsu"})
  {
    const auto amb = builtin_ambient(name);
    for (int i = 0; i < 100; ++i)
    {
      const auto s = evaluate_structure(*amb, random_point(rng, 9));
      EXPECT_LT(check_almost_contact(s, 1e-10).max(), 1e-12) << name;
      EXPECT_LT(metric_compatibility_residual(s), 1e-10) << name;
    }
  }
}

TEST(Manifold, LiteralAmbientViolatesEtaOfXi)
{
  const auto amb = builtin_ambient("example2_paper_literal");
  Vec p = Vec::Zero(9);
  p(8) = 0.5;
  const auto r = check_almost_contact(*amb, p, 1e-10);
  EXPECT_NEAR(r.eta_xi, std::exp(1.0) - 1.0, 1e-12);
}

TEST(Manifold, KenmotsuConditionSeparatesTheAmbients)
{
  std::mt19937_64 rng(42);
  const auto k2 = builtin_ambient("example2_kenmotsu");
  const auto k1 = builtin_ambient("example1_r9");
  for (int i = 0; i < 100; ++i)
  {
    const Vec p = random_point(rng, 9);
    const auto r = check_kenmotsu(*k2, p, 1e-8);
    EXPECT_LT(r.nabla_phi, 1e-10);
    EXPECT_LT(r.nabla_xi, 1e-10);
    const auto s = evaluate_structure(*k2, p);
    EXPECT_NEAR(s.norm(s.xi), 1.0, 1e-12);
    EXPECT_GE(check_kenmotsu(*k1, p, 1e-8).nabla_phi, 0.5);
  }
}

TEST(Manifold, CovariantDerivativeOfXAlongXInZSlot)
{
  const auto s = evaluate_structure(*builtin_ambient("example2_kenmotsu"), Vec::Zero(9));
  const Vec e = Vec::Unit(9, 0);
  const Vec d = s.gamma.contract(e, e);
  EXPECT_NEAR(d(8), -1.0, 1e-14);
  EXPECT_NEAR(d.head(8).norm(), 0.0, 1e-14);
}

TEST(Manifold, JetChristoffelMatchesFiniteDifferences)
{
  std::mt19937_64 rng(8);
  for (const char *name : {"example1_r9", "example2_kenmotsu"})
  {
    const auto amb = builtin_ambient(name);
    for (int i = 0; i < 5; ++i)
    {
      const Vec p = random_point(rng, 9);
      EXPECT_LT(crosscheck::relative_error(christoffel(*amb, p), crosscheck::fd_christoffel(*amb, p)), 1e-5);
    }
  }
}

TEST(Manifold, CreateRejectsBadStructures)
{
  const std::vector<std::string> coords{"a", "b", "t"};
  const auto phi = parse_all({"0", "1", "0", "-1", "0", "0", "0", "0", "0"});
  const auto xi = parse_all({"0", "0", "1"});
  const auto metric = parse_all({"1", "0", "0", "0", "1", "0", "0", "0", "1"});
  EXPECT_NO_THROW(AmbientStructure::create("ok", coords, phi, xi, xi, metric));
  EXPECT_THROW(AmbientStructure::create("even", {"a", "b"}, parse_all({"0", "1", "-1", "0"}),
                                        parse_all({"0", "0"}), parse_all({"0", "0"}),
                                        parse_all({"1", "0", "0", "1"})),
               Error);
  EXPECT_THROW(AmbientStructure::create("short", coords, phi, xi, xi, parse_all({"1"})), Error);
  EXPECT_THROW(AmbientStructure::create("unknown", coords, phi, parse_all({"0", "0", "w"}), xi, metric), Error);
  const auto asym = AmbientStructure::create("asym", coords, phi, xi, xi,
                                             parse_all({"1", "a", "0", "0", "1", "0", "0", "0", "1"}));
  EXPECT_THROW(evaluate_structure(*asym, Vec::Constant(3, 0.5)), GeometryError);
}

TEST(Manifold, SingularMetricIsAGeometryError)
{
  const std::vector<std::string> coords{"a", "b", "t"};
  const auto amb = AmbientStructure::create(
    "degenerate", coords, parse_all({"0", "1", "0", "-1", "0", "0", "0", "0", "0"}), parse_all({"0", "0", "1"}),
    parse_all({"0", "0", "1"}), parse_all({"a^2", "0", "0", "0", "1", "0", "0", "0", "1"}));
  EXPECT_THROW(evaluate_structure(*amb, Vec::Zero(3)), GeometryError);
  EXPECT_NO_THROW(evaluate_structure(*amb, Vec::Constant(3, 0.5)));
}

TEST(Frames, GramSchmidtAgainstAMetric)
{
  Mat g(3, 3);
  g << 2, 0.3, 0, 0.3, 1, 0.1, 0, 0.1, 3;
  std::vector<Vec> in{kv::testing::vec({1, 1, 0}), kv::testing::vec({0, 1, 1}), kv::testing::vec({1, 0, 1})};
  const auto r = immersion::orthonormalize_with_coefficients(immersion::make_frame(Vec::Zero(3), in, g), g);
  for (std::size_t i = 0; i < 3; ++i)
  {
    Vec rebuilt = Vec::Zero(3);
    for (std::size_t j = 0; j < 3; ++j)
      rebuilt += in[j] * r.coefficients(static_cast<Index>(j), static_cast<Index>(i));
    EXPECT_LT((rebuilt - r.frame.vectors[i]).norm(), 1e-12);
  }
  EXPECT_LT(immersion::orthonormality_residual(r.frame.vectors, g), 1e-12);
  const auto again = immersion::orthonormalize_with_coefficients(r.frame, g);
  for (std::size_t i = 0; i < 3; ++i)
    EXPECT_LT((again.frame.vectors[i] - r.frame.vectors[i]).norm(), 1e-12);
}
