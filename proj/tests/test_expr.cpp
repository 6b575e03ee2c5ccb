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
#include "expr.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <functional>
#include <random>
#include <set>

using namespace kv;
using expr::Expr;
using expr::parse;

TEST(Expr, ParsesCallOfSum)
{
  const Expr e = parse("cos(u+v)");
  EXPECT_TRUE(e.structurally_equal(Expr::call(expr::Function::Cos, Expr::variable("u") + Expr::variable("v"))));
}

TEST(Expr, UnaryMinusBindsLooserThanPower)
{
  const Expr e = parse("-u^2");
  EXPECT_TRUE(e.structurally_equal(-pow(Expr::variable("u"), Expr::number(2))));
  EXPECT_DOUBLE_EQ(expr::eval(e, {{"u", 3.0}}), -9.0);
}

TEST(Expr, PowerIsRightAssociative)
{
  EXPECT_DOUBLE_EQ(expr::eval(parse("2^3^2"), {}), 512.0);
}

TEST(Expr, EvaluatesWithConstants)
{
  EXPECT_NEAR(expr::eval(parse("exp(2*z)*sin(u)"), {{"z", 0.0}, {"u", std::numbers::pi / 2}}), 1.0, 1e-15);
  EXPECT_NEAR(expr::eval(parse("e^1 - exp(1)"), {}), 0.0, 1e-15);
}

TEST(Expr, ParseErrorReportsOffset)
{
  try
  {
    parse("sin(u + )");
    FAIL() << "expected a parse error";
  }
  catch (const ParseError &e)
  {
    EXPECT_EQ(e.offset(), 8u);
  }
  EXPECT_THROW(parse("foo(u)"), ParseError);
  EXPECT_THROW(parse("u v"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
}

TEST(Expr, DomainErrorsNameTheSubexpression)
{
  try
  {
    expr::eval(parse("log(u - 1)"), {{"u", 0.5}});
    FAIL() << "expected a domain error";
  }
  catch (const DomainError &e)
  {
    EXPECT_NE(e.subexpression().find("log"), std::string::npos);
  }
  EXPECT_THROW(expr::eval(parse("1/(u-u)"), {{"u", 2.0}}), DomainError);
  EXPECT_THROW(expr::eval(parse("sqrt(u)"), {{"u", -1.0}}), DomainError);
  EXPECT_THROW(expr::eval(parse("w"), {{"u", 1.0}}), Error);
}

TEST(Expr, JetOfExpAtZero)
{
  const Jet2 j = expr::eval_jet2(parse("exp(z)"), {{"z", Jet2::variable(0.0, 1, 0)}});
  EXPECT_DOUBLE_EQ(j.value(), 1.0);
  EXPECT_DOUBLE_EQ(j.gradient()(0), 1.0);
  EXPECT_DOUBLE_EQ(j.hessian()(0, 0), 1.0);
}

TEST(Expr, JetOfBilinearForm)
{
  const Jet2 j =
    expr::eval_jet2(parse("u*v"), {{"u", Jet2::variable(2.0, 2, 0)}, {"v", Jet2::variable(3.0, 2, 1)}});
  EXPECT_DOUBLE_EQ(j.value(), 6.0);
  EXPECT_DOUBLE_EQ(j.gradient()(0), 3.0);
  EXPECT_DOUBLE_EQ(j.gradient()(1), 2.0);
  EXPECT_DOUBLE_EQ(j.hessian()(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(j.hessian()(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(j.hessian()(1, 0), 1.0);
}

namespace {

// Central differences of value (gradient) and of the jet gradient (Hessian).
void expect_matches_fd(const std::string &text, double u0, double v0)
{
  const Expr e = parse(text);
  const std::vector<std::string> names{"u", "v"};
  const expr::Compiled c(e, names);
  auto f = [&](double u, double v) {
    const double x[2] = {u, v};
    return c.eval(std::span<const double>(x, 2));
  };
  const Jet2 xs[2] = {Jet2::variable(u0, 2, 0), Jet2::variable(v0, 2, 1)};
  const Jet2 j = c.eval(std::span<const Jet2>(xs, 2), 2);
  const double h = 1e-5;
  const double gu = (f(u0 + h, v0) - f(u0 - h, v0)) / (2 * h);
  const double gv = (f(u0, v0 + h) - f(u0, v0 - h)) / (2 * h);
  const double scale = std::max(1.0, j.gradient().cwiseAbs().maxCoeff());
  EXPECT_NEAR(j.value(), f(u0, v0), 1e-14 * std::max(1.0, std::abs(j.value()))) << text;
  EXPECT_LT(std::abs(j.gradient()(0) - gu) / scale, 1e-9) << text;
  EXPECT_LT(std::abs(j.gradient()(1) - gv) / scale, 1e-9) << text;

  const double huu = (f(u0 + h, v0) - 2 * f(u0, v0) + f(u0 - h, v0)) / (h * h);
  const double huv =
    (f(u0 + h, v0 + h) - f(u0 + h, v0 - h) - f(u0 - h, v0 + h) + f(u0 - h, v0 - h)) / (4 * h * h);
  const double hscale = std::max(1.0, j.hessian().cwiseAbs().maxCoeff());
  EXPECT_LT(std::abs(j.hessian()(0, 0) - huu) / hscale, 1e-4) << text;
  EXPECT_LT(std::abs(j.hessian()(0, 1) - huv) / hscale, 1e-5) << text;
}

} // namespace

TEST(Expr, JetMatchesFiniteDifferences)
{
  expect_matches_fd("cos(u+v)", 0.3, 0.4);
  expect_matches_fd("exp(2*u)*sin(v) - u^3/v", 0.2, 1.3);
  expect_matches_fd("sqrt(1 + u^2*v^2) + log(2 + cos(u))", -0.7, 0.9);
  expect_matches_fd("tan(u/3)*v^(1/2) + u^v", 0.8, 1.7);
}

TEST(Expr, RandomRoundTripIsStructural)
{
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, 9);
  std::function<Expr(int)> gen = [&](int depth) -> Expr {
    const int k = depth <= 0 ? pick(rng) % 3 : pick(rng);
    switch (k)
    {
    case 0: return Expr::number(std::ldexp(static_cast<double>(pick(rng)) - 4.0, -pick(rng) % 3));
    case 1: return Expr::variable(pick(rng) % 2 ? "u" : "v");
    case 2: return Expr::constant("pi");
    case 3: return gen(depth - 1) + gen(depth - 1);
    case 4: return gen(depth - 1) - gen(depth - 1);
    case 5: return gen(depth - 1) * gen(depth - 1);
    case 6: return gen(depth - 1) / gen(depth - 1);
    case 7: return pow(gen(depth - 1), gen(depth - 1));
    case 8: return -gen(depth - 1);
    default: return Expr::call(static_cast<expr::Function>(pick(rng) % 6), gen(depth - 1));
    }
  };
  for (int i = 0; i < 300; ++i)
  {
    const Expr e = gen(4);
    const std::string text = e.to_string();
    const Expr back = parse(text);
    EXPECT_TRUE(back.structurally_equal(e)) << text << " reprinted as " << back.to_string();
    EXPECT_EQ(back.to_string(), text);
  }
}

TEST(Expr, ReportsFreeVariables)
{
  const auto vars = parse("u*sin(v) + pi").variables();
  EXPECT_EQ(vars, (std::set<std::string>{"u", "v"}));
  EXPECT_TRUE(parse("exp(z)").references("z"));
  EXPECT_FALSE(parse("exp(z)").references("u"));
}
