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

#include "scenarios.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kv::crosscheck {

namespace {

Mat metric_at(const manifold::AmbientStructure &amb, const Vec &p)
{
  const int n = amb.dim();
  Mat g(n, n);
  const std::span<const double> vals(p.data(), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g(i, j) = amb.compiled_metric()[static_cast<std::size_t>(i * n + j)].eval(vals);
  return g;
}

Vec map_at(const immersion::Immersion &imm, const Vec &u)
{
  const std::span<const double> vals(u.data(), static_cast<std::size_t>(u.size()));
  Vec out(imm.dim());
  for (int k = 0; k < imm.dim(); ++k)
    out(k) = imm.compiled_target()[static_cast<std::size_t>(k)].eval(vals);
  return out;
}

} // namespace

manifold::Christoffel fd_christoffel(const manifold::AmbientStructure &amb, const Vec &p, double step)
{
  const int n = amb.dim();
  std::vector<Mat> dg;
  for (int k = 0; k < n; ++k)
  {
    Vec a = p, b = p;
    a(k) += step;
    b(k) -= step;
    dg.push_back((metric_at(amb, a) - metric_at(amb, b)) / (2.0 * step));
  }
  const Mat g = metric_at(amb, p);
  const Mat inv = g.ldlt().solve(Mat::Identity(n, n));
  manifold::Christoffel out(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
      {
        double acc = 0.0;
        for (int l = 0; l < n; ++l)
          acc += inv(k, l) * 0.5 * (dg[static_cast<std::size_t>(i)](j, l) + dg[static_cast<std::size_t>(j)](i, l) -
                                    dg[static_cast<std::size_t>(l)](i, j));
        out(k, i, j) = acc;
      }
  return out;
}

std::vector<Vec> fd_second_fundamental_form(const immersion::Immersion &imm, const Vec &u, double step)
{
  const int n = imm.n();
  const int dim = imm.dim();
  const Vec psi = map_at(imm, u);
  Mat J(dim, n);
  for (int a = 0; a < n; ++a)
  {
    Vec up = u, um = u;
    up(a) += step;
    um(a) -= step;
    J.col(a) = (map_at(imm, up) - map_at(imm, um)) / (2.0 * step);
  }
  const Mat g = metric_at(imm.ambient(), psi);
  const auto gamma = fd_christoffel(imm.ambient(), psi, step);
  const Mat ind = J.transpose() * g * J;
  const Mat proj = J * ind.ldlt().solve(J.transpose() * g); // tangential projector
  const Mat normal = Mat::Identity(dim, dim) - proj;

  std::vector<Vec> out(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
    {
      Vec d2;
      if (a == b)
      {
        Vec up = u, um = u;
        up(a) += step;
        um(a) -= step;
        d2 = (map_at(imm, up) - 2.0 * psi + map_at(imm, um)) / (step * step);
      }
      else
      {
        Vec pp = u, pm = u, mp = u, mm = u;
        pp(a) += step, pp(b) += step;
        pm(a) += step, pm(b) -= step;
        mp(a) -= step, mp(b) += step;
        mm(a) -= step, mm(b) -= step;
        d2 = (map_at(imm, pp) - map_at(imm, pm) - map_at(imm, mp) + map_at(imm, mm)) / (4.0 * step * step);
      }
      out[static_cast<std::size_t>(a * n + b)] = normal * (d2 + gamma.contract(J.col(a), J.col(b)));
    }
  return out;
}

double relative_error(const manifold::Christoffel &jet, const manifold::Christoffel &fd)
{
  const int n = jet.dim();
  double diff = 0.0, scale = 0.0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
      {
        diff = std::max(diff, std::abs(jet(k, i, j) - fd(k, i, j)));
        scale = std::max(scale, std::abs(jet(k, i, j)));
      }
  return diff / std::max(1.0, scale);
}

double relative_error(const std::vector<Vec> &jet, const std::vector<Vec> &fd)
{
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < jet.size(); ++i)
  {
    diff = std::max(diff, (jet[i] - fd[i]).cwiseAbs().maxCoeff());
    scale = std::max(scale, jet[i].cwiseAbs().maxCoeff());
  }
  return diff / std::max(1.0, scale);
}

report::Report finite_difference_report(std::uint64_t seed, int points, double tol_scale)
{
  report::Report r;
  r.scenario = "finite-difference cross-checks";
  r.description = "jet derivatives against central differences with step 1e-5";
  r.seed = seed;
  r.samples = points;
  r.tol_scale = tol_scale;
  Tolerances tol;
  tol.scale = tol_scale;
  const std::string group = "cross-check";

  {
    Accumulator acc;
    std::vector<std::pair<std::string, double>> per;
    for (const char *name : {"example1_r9", "example2_kenmotsu"})
    {
      const auto amb = manifold::builtin_ambient(name);
      Rng rng(stream_seed(seed, std::string("fd_christoffel/") + name));
      std::uniform_real_distribution<double> box(-1.0, 1.0);
      double worst = 0.0;
      for (int k = 0; k < points; ++k)
      {
        Vec p(amb->dim());
        for (int i = 0; i < amb->dim(); ++i)
          p(i) = box(rng);
        const double e = relative_error(manifold::christoffel(*amb, p), fd_christoffel(*amb, p));
        acc.add(e, p);
        worst = std::max(worst, e);
      }
      per.emplace_back(name, worst);
    }
    auto c = acc.finish("fd_christoffel", "jet Christoffel symbols match central differences", group,
                        tol.get("fd_christoffel"), seed);
    c.values = per;
    r.checks.push_back(std::move(c));
  }
  {
    Accumulator acc;
    std::vector<std::pair<std::string, double>> per;
    for (const auto &s : {scenarios::builtin("example1"), scenarios::builtin("example2", std::numbers::pi / 4)})
    {
      double worst = 0.0;
      for (const auto &u : scenarios::parameter_points(s, seed, points))
      {
        const auto pg = immersion::evaluate_point(*s.immersion, u);
        const double e = relative_error(pg.h, fd_second_fundamental_form(*s.immersion, u));
        acc.add(e, u);
        worst = std::max(worst, e);
      }
      per.emplace_back(s.name, worst);
    }
    auto c = acc.finish("fd_second_fundamental_form", "jet second fundamental form matches central differences",
                        group, tol.get("fd_second_fundamental_form"), seed);
    c.values = per;
    r.checks.push_back(std::move(c));
  }
  report::finalize_verdict(r, std::nullopt);
  return r;
}

} // namespace kv::crosscheck
