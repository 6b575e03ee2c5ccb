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

#include "decomposition.hpp"

#include "error.hpp"

#include <algorithm>
#include <cmath>

namespace kv::decomposition {

PFSplit pf_split(const PointGeometry &pg, const Vec &x)
{
  const Vec phix = pg.ambient.phi * x;
  PFSplit s;
  s.p = pg.tangential(phix);
  s.f = phix - s.p;
  return s;
}

PFSplit pf_split(const immersion::Immersion &imm, const Vec &u, const Vec &x_params)
{
  const auto pg = immersion::evaluate_point(imm, u);
  return pf_split(pg, pg.push(x_params));
}

TFSplit tf_split(const PointGeometry &pg, const Vec &n)
{
  const Vec tan = pg.tangential(n);
  if (pg.norm(tan) > 1e-9 * std::max(pg.norm(n), 1e-300))
    throw GeometryError("tf split needs a normal vector");
  const Vec phin = pg.ambient.phi * n;
  TFSplit s;
  s.t = pg.tangential(phin);
  s.f = phin - s.t;
  return s;
}

double slant_angle(const PointGeometry &pg, const Vec &x)
{
  const auto &xi = pg.ambient.xi;
  const double nx = pg.norm(x);
  const double nxi = pg.norm(xi);
  if (nx == 0.0)
    throw GeometryError("slant angle of the zero vector");
  const Vec perp = nxi > 0.0 ? Vec(x - (pg.inner(x, xi) / (nxi * nxi)) * xi) : x;
  if (pg.norm(perp) <= 1e-8 * nx)
    throw GeometryError("slant angle is undefined along xi");
  const auto s = pf_split(pg, x);
  const double nphi = pg.norm(pg.ambient.phi * x);
  if (nphi == 0.0)
    throw GeometryError("phi X vanishes");
  const double c = std::clamp(pg.norm(s.p) / nphi, 0.0, 1.0);
  return std::acos(c);
}

double slant_angle(const immersion::Immersion &imm, const Vec &u, const Vec &x_params)
{
  const auto pg = immersion::evaluate_point(imm, u);
  return slant_angle(pg, pg.push(x_params));
}

LambdaFit slant_lambda(const PointGeometry &pg, const std::vector<Vec> &basis)
{
  const auto &s = pg.ambient;
  double num = 0.0, den = 0.0;
  std::vector<Vec> lhs, rhs;
  for (const auto &x : basis)
  {
    const Vec px = pf_split(pg, x).p;
    const Vec ppx = pf_split(pg, px).p;
    const Vec r = -x + s.eta.dot(x) * s.xi;
    num += pg.inner(ppx, r);
    den += pg.inner(r, r);
    lhs.push_back(ppx);
    rhs.push_back(r);
  }
  if (!(den > 0.0))
    throw GeometryError("lambda fit needs a direction transverse to xi");
  LambdaFit fit;
  fit.lambda = num / den;
  for (std::size_t i = 0; i < basis.size(); ++i)
    fit.residual = std::max(fit.residual, pg.norm(lhs[i] - fit.lambda * rhs[i]) / pg.norm(basis[i]));
  return fit;
}

SlantNormResidual slant_norm_residuals(const PointGeometry &pg, const std::vector<Vec> &basis, double theta)
{
  const auto &eta = pg.ambient.eta;
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  std::vector<PFSplit> splits;
  for (const auto &x : basis)
    splits.push_back(pf_split(pg, x));
  SlantNormResidual out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
    {
      const double scale = pg.norm(basis[i]) * pg.norm(basis[j]);
      const double base = pg.inner(basis[i], basis[j]) - eta.dot(basis[i]) * eta.dot(basis[j]);
      out.tangential =
        std::max(out.tangential, std::abs(pg.inner(splits[i].p, splits[j].p) - c2 * base) / scale);
      out.normal = std::max(out.normal, std::abs(pg.inner(splits[i].f, splits[j].f) - s2 * base) / scale);
    }
  return out;
}

PFDecomposition decompose(const PointGeometry &pg)
{
  const int n = pg.n();
  const int codim = static_cast<int>(pg.normal.size());
  PFDecomposition d;
  d.base = pg.position;
  d.P = Mat::Zero(n, n);
  d.F = Mat::Zero(codim, n);
  d.t = Mat::Zero(n, codim);
  d.f = Mat::Zero(codim, codim);

  for (int a = 0; a < n; ++a)
  {
    const Vec x = pg.jacobian.col(a);
    const auto s = pf_split(pg, x);
    d.P.col(a) = pg.param_coords(s.p);
    Vec fx = Vec::Zero(pg.dim());
    for (int r = 0; r < codim; ++r)
    {
      const Vec &nr = pg.normal.vectors[static_cast<std::size_t>(r)];
      d.F(r, a) = pg.inner(s.f, nr);
      fx += d.F(r, a) * nr;
    }
    const Vec rebuilt = pg.push(d.P.col(a)) + fx;
    d.reconstruction = std::max(d.reconstruction, pg.norm(pg.ambient.phi * x - rebuilt) / pg.norm(x));
  }
  for (int r = 0; r < codim; ++r)
  {
    const Vec &nr = pg.normal.vectors[static_cast<std::size_t>(r)];
    const auto s = tf_split(pg, nr);
    d.t.col(r) = pg.param_coords(s.t);
    Vec fn = Vec::Zero(pg.dim());
    for (int q = 0; q < codim; ++q)
    {
      const Vec &nq = pg.normal.vectors[static_cast<std::size_t>(q)];
      d.f(q, r) = pg.inner(s.f, nq);
      fn += d.f(q, r) * nq;
    }
    const Vec rebuilt = pg.push(d.t.col(r)) + fn;
    d.normal_reconstruction = std::max(d.normal_reconstruction, pg.norm(pg.ambient.phi * nr - rebuilt));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
    {
      const Vec x = pg.jacobian.col(a);
      const Vec y = pg.jacobian.col(b);
      const double lhs = pg.inner(pg.push(d.P.col(a)), y);
      const double rhs = pg.inner(x, pg.push(d.P.col(b)));
      d.skew = std::max(d.skew, std::abs(lhs + rhs) / (pg.norm(x) * pg.norm(y)));
    }
  return d;
}

std::vector<Vec> pushed_basis(const PointGeometry &pg, const std::vector<int> &indices)
{
  std::vector<Vec> out;
  for (int a : indices)
    out.push_back(pg.jacobian.col(a));
  return out;
}

std::vector<CheckRecord> decomposition_checks(const Context &ctx, double theta)
{
  const std::string group = "decomposition";
  std::vector<CheckRecord> out;
  Accumulator recon, trecon, skew;
  for (const auto &pg : ctx.points)
  {
    const auto d = decompose(pg);
    recon.add(d.reconstruction, pg.u);
    trecon.add(d.normal_reconstruction, pg.u);
    skew.add(d.skew, pg.u);
  }
  out.push_back(recon.finish("pf_reconstruction", "phi X = PX + FX", group, ctx.tol.get("pf_reconstruction"),
                             ctx.seed));
  out.push_back(trecon.finish("tf_reconstruction", "phi N = tN + fN", group, ctx.tol.get("tf_reconstruction"),
                              ctx.seed));
  out.push_back(skew.finish("p_skew_adjoint", "g(PX,Y) = -g(X,PY)", group, ctx.tol.get("p_skew_adjoint"), ctx.seed));

  if (!ctx.split.d.empty())
  {
    Accumulator fit;
    for (const auto &pg : ctx.points)
    {
      const auto f = slant_lambda(pg, pushed_basis(pg, ctx.split.d));
      fit.add(std::max(std::abs(f.lambda - 1.0), f.residual), pg.u);
    }
    auto r = fit.finish("invariant_lambda_fit", "P^2 = -(I - eta (x) xi) on D", group,
                        ctx.tol.get("invariant_lambda_fit"), ctx.seed);
    out.push_back(std::move(r));
  }

  const std::string anchors[] = {"P^2 = -cos^2(theta)(I - eta (x) xi) on D^theta",
                                 "g(PX,PY) = cos^2(theta)(g(X,Y) - eta(X)eta(Y))",
                                 "g(FX,FY) = sin^2(theta)(g(X,Y) - eta(X)eta(Y))", "g(tFZ,Z) = -sin^2(theta)|Z|^2"};
  const char *ids[] = {"slant_lambda_fit", "slant_tangential_norm", "slant_normal_norm", "slant_tf_identity"};
  if (ctx.split.theta.empty() || !std::isfinite(theta))
  {
    const std::string reason = ctx.split.theta.empty() ? "D^theta is empty" : "no constant slant angle measured";
    for (int i = 0; i < 4; ++i)
      out.push_back(skipped_record(ids[i], anchors[i], group, reason));
    return out;
  }

  Accumulator fit, tang, norm, tf;
  double lambda_sum = 0.0;
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  auto rng = ctx.rng("slant_tf_identity");
  for (const auto &pg : ctx.points)
  {
    auto basis = pushed_basis(pg, ctx.split.theta);
    const auto f = slant_lambda(pg, basis);
    lambda_sum += f.lambda;
    fit.add(std::max(std::abs(f.lambda - c2), f.residual), pg.u);

    // mix in a random direction so the pair identities are not basis-only
    basis.push_back(pg.push(random_coefficients(rng, ctx.split.theta, pg.n())));
    const auto nr = slant_norm_residuals(pg, basis, theta);
    tang.add(nr.tangential, pg.u);
    norm.add(nr.normal, pg.u);

    for (const auto &z : basis)
    {
      const Vec zp = z - pg.ambient.eta.dot(z) * pg.ambient.xi;
      const double zz = pg.inner(zp, zp);
      if (zz == 0.0)
        continue;
      const Vec fz = pf_split(pg, zp).f;
      const Vec tfz = tf_split(pg, fz).t;
      tf.add(std::abs(pg.inner(tfz, zp) + s2 * zz) / zz, pg.u);
    }
  }
  auto r = fit.finish(ids[0], anchors[0], group, ctx.tol.get(ids[0]), ctx.seed);
  r.values.emplace_back("lambda_mean", lambda_sum / static_cast<double>(ctx.points.size()));
  r.values.emplace_back("cos2_theta", c2);
  out.push_back(std::move(r));
  out.push_back(tang.finish(ids[1], anchors[1], group, ctx.tol.get(ids[1]), ctx.seed));
  out.push_back(norm.finish(ids[2], anchors[2], group, ctx.tol.get(ids[2]), ctx.seed));
  out.push_back(tf.finish(ids[3], anchors[3], group, ctx.tol.get(ids[3]), ctx.seed));
  return out;
}

} // namespace kv::decomposition
