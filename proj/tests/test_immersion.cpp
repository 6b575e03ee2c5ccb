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
#include "immersion.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

using namespace kv;
using namespace kv::immersion;
using kv::testing::parse_all;
using kv::testing::vec;

namespace {

scenarios::Scenario bend_scenario()
{
  std::ifstream in(std::string(KENVERIFY_TEST_DATA) + "/holomorphic_bend.json");
  std::stringstream ss;
  ss << in.rdbuf();
  return scenarios::load(ss.str());
}

} // namespace

TEST(Immersion, Example1JacobianAndInducedMetric)
{
  const auto s = scenarios::builtin("example1");
  const Vec u = vec({0.3, -0.2, 0.5, 0.1, 0.7});
  const auto pg = evaluate_point(*s.immersion, u);
  // d/dv3 = d/dx4 - d/dy4
  Vec x3 = Vec::Zero(9);
  x3(3) = 1;
  x3(7) = -1;
  EXPECT_LT((pg.jacobian.col(2) - x3).norm(), 1e-15);
  const Vec diag = vec({17.0 / 4, 17.0 / 4, 2, 2, 1});
  EXPECT_LT((pg.induced_metric - Mat(diag.asDiagonal())).cwiseAbs().maxCoeff(), 1e-14);
  const Frame nf = normal_frame(*s.immersion, u);
  EXPECT_EQ(nf.size(), 4u);
  for (const auto &n : nf.vectors)
    for (int a = 0; a < 5; ++a)
      EXPECT_LT(std::abs(pg.inner(n, pg.jacobian.col(a))), 1e-10);
  // mutually orthogonal columns: the orthonormal frame is X_i / |X_i|
  for (int a = 0; a < 5; ++a)
    EXPECT_LT((pg.orthonormal_tangent.vectors[a] - pg.jacobian.col(a) / std::sqrt(diag(a))).norm(), 1e-14);
}

TEST(Immersion, Example2SlantColumnAndMetric)
{
  const double t = std::numbers::pi / 3;
  const auto s = scenarios::builtin("example2", t);
  const Vec u = vec({0.1, 0.2, -0.3, 0.4, 0.25});
  const auto pg = evaluate_point(*s.immersion, u);
  Vec x4 = Vec::Zero(9);
  x4(6) = std::cos(t);
  x4(7) = std::sin(t);
  EXPECT_LT((pg.jacobian.col(3) - x4).norm(), 1e-15);
  const double e2z = std::exp(0.5);
  EXPECT_LT((pg.induced_metric - Mat(vec({e2z, e2z, e2z, e2z, 1}).asDiagonal())).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_EQ(pg.normal.size(), 4u);
  std::vector<Vec> all = pg.orthonormal_tangent.vectors;
  all.insert(all.end(), pg.normal.vectors.begin(), pg.normal.vectors.end());
  EXPECT_LT(orthonormality_residual(all, pg.ambient.metric), 1e-10);
}

TEST(Immersion, AffineSubspaceOfFlatSpaceIsTotallyGeodesic)
{
  const auto amb = manifold::builtin_ambient("example1_r9");
  const auto imm = Immersion::create({"a", "b", "c"},
                                     parse_all({"a + 2*b", "b", "0", "c", "a - c", "0", "3", "b + c", "a"}), amb);
  const auto pg = evaluate_point(*imm, vec({0.2, 0.4, -0.1}));
  EXPECT_EQ(pg.normal.size(), 6u);
  for (const auto &h : pg.h)
    EXPECT_LT(h.norm(), 1e-15);
  for (const auto &n : pg.normal.vectors)
    EXPECT_LT(shape_operator(pg, n, vec({1, -1, 2})).norm(), 1e-15);
  // constant Jacobian: the coordinate frame is the column set of the linear map
  EXPECT_EQ(pg.jacobian(0, 1), 2.0);
}

TEST(Immersion, HXiVanishesOnExample2)
{
  const auto s = scenarios::builtin("example2");
  const auto pg = evaluate_point(*s.immersion, vec({0.5, -0.1, 0.2, 0.9, -0.3}));
  const Vec xi = Vec::Unit(5, 4);
  for (int a = 0; a < 5; ++a)
    EXPECT_LT(pg.norm(second_fundamental_form(pg, Vec::Unit(5, a), xi)), 1e-14);
}

TEST(Immersion, DualityAndSymmetryOnCurvedExample)
{
  const auto s = bend_scenario();
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd(0, 1);
  for (const auto &u : scenarios::parameter_points(s, 7, 20))
  {
    const auto pg = evaluate_point(*s.immersion, u);
    double hmax = 0;
    for (const auto &h : pg.h)
      hmax = std::max(hmax, pg.norm(h));
    EXPECT_GT(hmax, 1e-3);
    for (int t = 0; t < 50; ++t)
    {
      Vec x(5), y(5);
      for (int i = 0; i < 5; ++i)
      {
        x(i) = nd(rng);
        y(i) = nd(rng);
      }
      Vec n = Vec::Zero(9);
      for (const auto &e : pg.normal.vectors)
        n += nd(rng) * e;
      const double scale = pg.norm(pg.push(x)) * pg.norm(pg.push(y)) * pg.norm(n);
      const double lhs = pg.inner(shape_operator(pg, n, x), pg.push(y));
      EXPECT_LT(std::abs(lhs - pg.inner(second_fundamental_form(pg, x, y), n)) / scale, 1e-12);
      EXPECT_LT(pg.norm(second_fundamental_form(pg, x, y) - second_fundamental_form(pg, y, x)) / scale, 1e-12);
    }
  }
}

TEST(Immersion, JetSecondFundamentalFormMatchesFiniteDifferences)
{
  const auto s = bend_scenario();
  for (const auto &u : scenarios::parameter_points(s, 3, 5))
  {
    const auto pg = evaluate_point(*s.immersion, u);
    EXPECT_LT(crosscheck::relative_error(pg.h, crosscheck::fd_second_fundamental_form(*s.immersion, u)), 1e-5);
  }
}

TEST(Immersion, ShapeOperatorRejectsTangentVectors)
{
  const auto s = scenarios::builtin("example2");
  const auto pg = evaluate_point(*s.immersion, vec({0, 0, 0, 0, 0}));
  EXPECT_THROW(shape_operator(pg, pg.jacobian.col(0), Vec::Unit(5, 1)), GeometryError);
}

TEST(Immersion, RankLossIsReported)
{
  const auto amb = manifold::builtin_ambient("example1_r9");
  const auto imm = Immersion::create({"a", "b"}, parse_all({"a^2", "b", "0", "0", "0", "0", "0", "0", "0"}), amb);
  try
  {
    evaluate_point(*imm, vec({0.0, 0.3}));
    FAIL() << "expected rank loss";
  }
  catch (const RankError &e)
  {
    EXPECT_LT(e.smallest_singular_value(), 1e-8);
  }
  EXPECT_NO_THROW(evaluate_point(*imm, vec({0.5, 0.3})));
}

TEST(Immersion, CreateCollectsEveryViolation)
{
  const auto amb = manifold::builtin_ambient("example1_r9");
  try
  {
    Immersion::create({"a", "a", "pi"}, parse_all({"a", "w"}), amb);
    FAIL() << "expected validation error";
  }
  catch (const ValidationError &e)
  {
    EXPECT_GE(e.violations().size(), 3u);
  }
}

TEST(Immersion, InducedConnectionAgreesWithTangentialDerivative)
{
  const auto s = bend_scenario();
  const Vec u = vec({0.4, -0.6, 0.3, 0.2, 0.1});
  const auto pg = evaluate_point(*s.immersion, u);
  const auto ic = induced_connection(*s.immersion, u);
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
    {
      const Vec c = pg.param_coords(pg.connection(Vec::Unit(5, a), Vec::Unit(5, b)));
      for (int k = 0; k < 5; ++k)
        EXPECT_NEAR(c(k), ic.gamma(k, a, b), 1e-12);
    }
}
