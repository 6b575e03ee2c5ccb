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

#include "distribution.hpp"

#include "decomposition.hpp"
#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kv::distribution {

using decomposition::pf_split;

std::string_view kind_name(Kind k)
{
  switch (k)
  {
  case Kind::Invariant: return "invariant";
  case Kind::AntiInvariant: return "anti-invariant";
  case Kind::Slant: return "slant";
  case Kind::ContactCR: return "contact-CR";
  case Kind::SemiSlant: return "semi-slant";
  case Kind::ProperSemiSlant: return "proper-semi-slant";
  case Kind::Unclassified: return "unclassified";
  }
  return "unclassified";
}

namespace {

const std::string kSplit = "split";
const std::string kConnection = "connection identities";
const std::string kFoliation = "foliations";

double norm_product(const PointGeometry &pg, std::initializer_list<Vec> vs)
{
  double p = 1.0;
  for (const auto &v : vs)
    p *= pg.norm(v);
  return p;
}

CheckRecord orthogonality(const Context &ctx)
{
  const auto &sp = ctx.split;
  std::vector<std::vector<int>> blocks = {sp.d, sp.theta};
  if (sp.xi >= 0)
    blocks.push_back({sp.xi});
  Accumulator acc;
  for (const auto &pg : ctx.points)
  {
    double worst = 0.0;
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (std::size_t j = i + 1; j < blocks.size(); ++j)
        for (int a : blocks[i])
          for (int b : blocks[j])
          {
            const Vec x = pg.jacobian.col(a);
            const Vec y = pg.jacobian.col(b);
            worst = std::max(worst, std::abs(pg.inner(x, y)) / (pg.norm(x) * pg.norm(y)));
          }
    acc.add(worst, pg.u);
  }
  return acc.finish("split_orthogonality", "D, D^theta and <xi> mutually orthogonal", kSplit,
                    ctx.tol.get("split_orthogonality"), ctx.seed);
}

CheckRecord xi_alignment(const Context &ctx)
{
  if (ctx.split.xi < 0)
    return skipped_record("xi_alignment", "declared xi direction equals xi", kSplit, "no xi direction declared");
  Accumulator acc;
  for (const auto &pg : ctx.points)
  {
    const Vec x = pg.jacobian.col(ctx.split.xi);
    const Vec &xi = pg.ambient.xi;
    acc.add(pg.norm(x / pg.norm(x) - xi / pg.norm(xi)), pg.u);
  }
  return acc.finish("xi_alignment", "declared xi direction equals xi", kSplit, ctx.tol.get("xi_alignment"),
                    ctx.seed);
}

CheckRecord invariance(const Context &ctx)
{
  Accumulator acc;
  for (const auto &pg : ctx.points)
  {
    double worst = 0.0;
    for (int a : ctx.split.d)
    {
      const Vec x = pg.jacobian.col(a);
      worst = std::max(worst, pg.norm(pf_split(pg, x).f) / pg.norm(x));
    }
    acc.add(worst, pg.u);
  }
  return acc.finish("invariant_distribution", "FX = 0 on D", kSplit, ctx.tol.get("invariant_distribution"),
                    ctx.seed);
}

/// Random linear field sum_i (alpha_i + beta_i . u) d_i over the listed indices.
std::vector<expr::Expr> random_linear_field(Rng &rng, const std::vector<int> &indices,
                                            const std::vector<std::string> &params)
{
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<expr::Expr> field(params.size(), expr::Expr::number(0.0));
  for (int i : indices)
  {
    expr::Expr c = expr::Expr::number(normal(rng));
    for (const auto &p : params)
      c = c + expr::Expr::number(normal(rng)) * expr::Expr::variable(p);
    field[static_cast<std::size_t>(i)] = c;
  }
  return field;
}

Vec field_value(const std::vector<expr::Expr> &field, const std::vector<std::string> &params, const Vec &u)
{
  std::map<std::string, double> binding;
  for (std::size_t i = 0; i < params.size(); ++i)
    binding[params[i]] = u(static_cast<Index>(i));
  Vec v(static_cast<Index>(field.size()));
  for (std::size_t i = 0; i < field.size(); ++i)
    v(static_cast<Index>(i)) = expr::eval(field[i], binding);
  return v;
}

} // namespace

Classification classify(const Context &ctx, double angle_tol)
{
  Classification c;
  c.evidence.push_back(orthogonality(ctx));
  c.evidence.push_back(xi_alignment(ctx));
  c.split_valid = c.evidence[0].pass && (c.evidence[1].pass || c.evidence[1].skipped);

  if (!ctx.split.d.empty())
  {
    c.evidence.push_back(invariance(ctx));
    c.d_invariant = c.evidence.back().pass;
  }
  else
    c.d_invariant = true;

  if (!ctx.split.theta.empty())
  {
    auto rng = ctx.rng("slant_constancy");
    double lo = std::numbers::pi, hi = 0.0, sum = 0.0;
    std::size_t count = 0;
    std::string failure;
    Vec worst;
    for (const auto &pg : ctx.points)
    {
      for (int k = 0; k < ctx.directions; ++k)
      {
        const Vec x = pg.push(random_coefficients(rng, ctx.split.theta, pg.n()));
        try
        {
          const double th = decomposition::slant_angle(pg, x);
          if (th < lo || th > hi)
            worst = pg.u;
          lo = std::min(lo, th);
          hi = std::max(hi, th);
          sum += th;
          ++count;
        }
        catch (const GeometryError &e)
        {
          failure = e.what();
        }
      }
    }
    CheckRecord r;
    r.id = "slant_constancy";
    r.anchor = "theta(X) independent of X in D^theta and of the point";
    r.group = kSplit;
    r.tolerance = ctx.tol.get("slant_constancy");
    r.samples = count;
    r.seed = ctx.seed;
    r.worst_point.assign(worst.data(), worst.data() + worst.size());
    if (count > 0 && failure.empty())
    {
      c.spread = hi - lo;
      c.theta_min = lo;
      c.theta_max = hi;
      r.max_residual = c.spread;
      r.mean_residual = c.spread;
      r.pass = c.spread <= r.tolerance;
      r.values = {{"theta_mean", sum / static_cast<double>(count)},
                  {"theta_min", lo},
                  {"theta_max", hi},
                  {"cos_theta_mean", std::cos(sum / static_cast<double>(count))}};
      if (r.pass)
        c.slant_angle = sum / static_cast<double>(count);
    }
    else
    {
      r.max_residual = std::numeric_limits<double>::infinity();
      r.note = failure.empty() ? "no directions sampled" : failure;
    }
    c.slant_constant = r.pass;
    c.evidence.push_back(std::move(r));
  }

  const bool has_d = !ctx.split.d.empty();
  const bool has_theta = !ctx.split.theta.empty();
  if (!c.split_valid || !c.d_invariant)
    c.kind = Kind::Unclassified;
  else if (!has_theta)
    c.kind = has_d ? Kind::Invariant : Kind::Unclassified;
  else if (!c.slant_constant)
    c.kind = Kind::Unclassified;
  else
  {
    const double th = *c.slant_angle;
    if (th <= angle_tol)
      c.kind = has_d ? Kind::SemiSlant : Kind::Invariant;
    else if (th >= std::numbers::pi / 2 - angle_tol)
      c.kind = has_d ? Kind::ContactCR : Kind::AntiInvariant;
    else
      c.kind = has_d ? Kind::ProperSemiSlant : Kind::Slant;
  }
  return c;
}

Vec lie_bracket(const immersion::Immersion &imm, const Vec &u, const std::vector<expr::Expr> &a,
                const std::vector<expr::Expr> &b)
{
  const int n = imm.n();
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n || u.size() != n)
    throw GeometryError("vector field size does not match the parameter count");
  std::vector<Jet2> seeds;
  for (int i = 0; i < n; ++i)
    seeds.push_back(Jet2::variable(u(i), n, i));
  std::vector<Jet2> ja, jb;
  for (int i = 0; i < n; ++i)
  {
    ja.push_back(expr::Compiled(a[static_cast<std::size_t>(i)], imm.params()).eval(seeds, n));
    jb.push_back(expr::Compiled(b[static_cast<std::size_t>(i)], imm.params()).eval(seeds, n));
  }
  Vec av(n), bv(n);
  for (int i = 0; i < n; ++i)
  {
    av(i) = ja[static_cast<std::size_t>(i)].value();
    bv(i) = jb[static_cast<std::size_t>(i)].value();
  }
  Vec out(n);
  for (int i = 0; i < n; ++i)
    out(i) = av.dot(jb[static_cast<std::size_t>(i)].gradient()) - bv.dot(ja[static_cast<std::size_t>(i)].gradient());
  return out;
}

double shape_combination(const PointGeometry &pg, const Vec &x, const Vec &z, const Vec &y)
{
  const Vec xa = pg.push(x);
  const auto sz = pf_split(pg, pg.push(z));
  const Vec fpz = pf_split(pg, sz.p).f;
  const Vec phix = pg.param_coords(pg.ambient.phi * xa);
  const Vec a = immersion::shape_operator(pg, sz.f, phix) - immersion::shape_operator(pg, fpz, x);
  return pg.inner(a, pg.push(y));
}

double invariant_leaf_identity_residual(const PointGeometry &pg, double theta, const Vec &x, const Vec &y,
                                        const Vec &z)
{
  const double s2 = std::sin(theta) * std::sin(theta);
  const double lhs = s2 * pg.inner(pg.connection(y, x), pg.push(z));
  const double rhs = shape_combination(pg, x, z, y);
  return std::abs(lhs - rhs) / norm_product(pg, {pg.push(x), pg.push(y), pg.push(z)});
}

double slant_leaf_identity_residual(const PointGeometry &pg, double theta, const Vec &x, const Vec &z, const Vec &w)
{
  const double s2 = std::sin(theta) * std::sin(theta);
  const Vec xa = pg.push(x), za = pg.push(z), wa = pg.push(w);
  const double lhs = pg.inner(pg.connection(z, w), xa);
  // A_{FPW} X - A_{FW} phi X = -(shape combination with W)
  const double rhs = -shape_combination(pg, x, w, z) / s2 - pg.ambient.eta.dot(xa) * pg.inner(za, wa);
  return std::abs(lhs - rhs) / norm_product(pg, {xa, za, wa});
}

double slant_bracket_identity_residual(const PointGeometry &pg, double theta, const Vec &x, const Vec &z,
                                       const Vec &w, const Vec &bracket)
{
  const double s2 = std::sin(theta) * std::sin(theta);
  const Vec xa = pg.push(x);
  const double lhs = s2 * pg.inner(pg.push(bracket), xa);
  const double rhs = shape_combination(pg, x, z, w) - shape_combination(pg, x, w, z);
  return std::abs(lhs - rhs) / norm_product(pg, {xa, pg.push(z), pg.push(w)});
}

std::vector<CheckRecord> connection_identity_checks(const Context &ctx, const Classification &cls)
{
  const char *ids[] = {"invariant_leaf_connection_identity", "slant_leaf_connection_identity",
                       "slant_bracket_identity"};
  const char *anchors[] = {"sin^2(theta) g(nabla_Y X, Z) = g(A_FZ phiX - A_FPZ X, Y)",
                           "g(nabla_Z W, X) = csc^2(theta) g(A_FPW X - A_FW phiX, Z) - eta(X) g(Z,W)",
                           "sin^2(theta) g([Z,W], X) = g(A_FZ phiX - A_FPZ X, W) - g(A_FW phiX - A_FPW X, Z)"};
  std::vector<CheckRecord> out;
  std::string reason;
  if (!ctx.kenmotsu_verified)
    reason = "ambient not Kenmotsu: connection identities skipped";
  else if (!cls.semi_slant_family() && cls.kind != Kind::Slant && cls.kind != Kind::AntiInvariant)
    reason = "no constant slant angle on D^theta: connection identities skipped";
  else if (ctx.split.theta.empty())
    reason = "D^theta is empty";
  if (!reason.empty())
  {
    for (int i = 0; i < 3; ++i)
      out.push_back(skipped_record(ids[i], anchors[i], kConnection, reason));
    return out;
  }
  const double theta = *cls.slant_angle;
  const auto dx = ctx.split.d_and_xi();
  const auto &th = ctx.split.theta;
  const auto &params = ctx.imm->params();

  {
    auto rng = ctx.rng(ids[0]);
    Accumulator acc;
    for (int k = 0; k < ctx.tuples; ++k)
    {
      const auto &pg = ctx.point(static_cast<std::size_t>(k));
      const Vec x = random_coefficients(rng, dx, pg.n());
      const Vec y = random_coefficients(rng, dx, pg.n());
      const Vec z = random_coefficients(rng, th, pg.n());
      acc.add(invariant_leaf_identity_residual(pg, theta, x, y, z), pg.u);
    }
    out.push_back(acc.finish(ids[0], anchors[0], kConnection, ctx.tol.get(ids[0]), ctx.seed));
  }
  if (theta <= 1e-6)
    out.push_back(skipped_record(ids[1], anchors[1], kConnection, "slant angle is 0: csc^2 undefined"));
  else
  {
    auto rng = ctx.rng(ids[1]);
    Accumulator acc;
    for (int k = 0; k < ctx.tuples; ++k)
    {
      const auto &pg = ctx.point(static_cast<std::size_t>(k));
      const Vec x = random_coefficients(rng, dx, pg.n());
      const Vec z = random_coefficients(rng, th, pg.n());
      const Vec w = random_coefficients(rng, th, pg.n());
      acc.add(slant_leaf_identity_residual(pg, theta, x, z, w), pg.u);
    }
    out.push_back(acc.finish(ids[1], anchors[1], kConnection, ctx.tol.get(ids[1]), ctx.seed));
  }
  {
    auto rng = ctx.rng(ids[2]);
    Accumulator acc;
    for (int k = 0; k < ctx.tuples; ++k)
    {
      const auto &pg = ctx.point(static_cast<std::size_t>(k));
      const Vec x = random_coefficients(rng, dx, pg.n());
      const auto zf = random_linear_field(rng, th, params);
      const auto wf = random_linear_field(rng, th, params);
      const Vec z = field_value(zf, params, pg.u);
      const Vec w = field_value(wf, params, pg.u);
      const Vec br = lie_bracket(*ctx.imm, pg.u, zf, wf);
      acc.add(slant_bracket_identity_residual(pg, theta, x, z, w, br), pg.u);
    }
    out.push_back(acc.finish(ids[2], anchors[2], kConnection, ctx.tol.get(ids[2]), ctx.seed));
  }
  return out;
}

std::vector<CheckRecord> foliation_checks(const Context &ctx, const Classification &cls, bool warped)
{
  std::vector<CheckRecord> out;
  const auto dx = ctx.split.d_and_xi();
  const auto &th = ctx.split.theta;
  const auto &params = ctx.imm->params();
  const bool both = !dx.empty() && !th.empty();

  if (both)
  {
    auto rng = ctx.rng("invariant_leaf_geodesic");
    Accumulator direct, shape;
    const bool shape_ok = ctx.kenmotsu_verified && cls.slant_angle.has_value();
    for (int k = 0; k < ctx.tuples; ++k)
    {
      const auto &pg = ctx.point(static_cast<std::size_t>(k));
      const Vec x = random_coefficients(rng, dx, pg.n());
      const Vec y = random_coefficients(rng, dx, pg.n());
      const Vec z = random_coefficients(rng, th, pg.n());
      const double scale = norm_product(pg, {pg.push(x), pg.push(y), pg.push(z)});
      direct.add(std::abs(pg.inner(pg.connection(y, x), pg.push(z))) / scale, pg.u);
      if (shape_ok)
        shape.add(std::abs(shape_combination(pg, x, z, y)) / scale, pg.u);
    }
    auto r = direct.finish("invariant_leaf_geodesic", "g(nabla_Y X, Z) = 0 on D + <xi> leaves", kFoliation,
                           ctx.tol.get("invariant_leaf_geodesic"), ctx.seed);
    r.diagnostic = !warped;
    out.push_back(std::move(r));
    if (shape_ok)
    {
      auto s = shape.finish("invariant_leaf_geodesic_shape", "g(A_FZ phiX - A_FPZ X, Y) = 0", kFoliation,
                            ctx.tol.get("invariant_leaf_geodesic_shape"), ctx.seed);
      s.diagnostic = !warped;
      out.push_back(std::move(s));
    }
    else
      out.push_back(skipped_record("invariant_leaf_geodesic_shape", "g(A_FZ phiX - A_FPZ X, Y) = 0", kFoliation,
                                   ctx.kenmotsu_verified ? "no constant slant angle"
                                                         : "ambient not Kenmotsu: shape form skipped"));

    auto rng2 = ctx.rng("slant_leaf_geodesic_condition");
    Accumulator sl;
    for (int k = 0; k < ctx.tuples; ++k)
    {
      const auto &pg = ctx.point(static_cast<std::size_t>(k));
      const Vec x = random_coefficients(rng2, dx, pg.n());
      const Vec z = random_coefficients(rng2, th, pg.n());
      const Vec w = random_coefficients(rng2, th, pg.n());
      const double scale = norm_product(pg, {pg.push(x), pg.push(z), pg.push(w)});
      sl.add(std::abs(pg.inner(pg.connection(z, w), pg.push(x))) / scale, pg.u);
    }
    auto s = sl.finish("slant_leaf_geodesic_condition", "g(nabla_Z W, X) = 0 on D^theta leaves", kFoliation,
                       ctx.tol.get("slant_leaf_geodesic_condition"), ctx.seed);
    s.diagnostic = true;
    s.pass = s.max_residual < s.tolerance;
    s.note = "diagnostic; a non-constant warping makes these leaves umbilical, not geodesic";
    out.push_back(std::move(s));
  }

  auto integrability = [&](const std::string &id, const std::string &anchor, const std::vector<int> &sub) {
    if (sub.size() < 2)
    {
      out.push_back(skipped_record(id, anchor, kFoliation, "distribution has rank below 2"));
      return;
    }
    std::vector<int> outside;
    for (int i = 0; i < ctx.imm->n(); ++i)
      if (std::find(sub.begin(), sub.end(), i) == sub.end())
        outside.push_back(i);
    auto rng = ctx.rng(id);
    Accumulator acc;
    for (int k = 0; k < ctx.tuples; ++k)
    {
      const auto &pg = ctx.point(static_cast<std::size_t>(k));
      const auto af = random_linear_field(rng, sub, params);
      const auto bf = random_linear_field(rng, sub, params);
      const Vec br = lie_bracket(*ctx.imm, pg.u, af, bf);
      Vec off = Vec::Zero(pg.n());
      for (int i : outside)
        off(i) = br(i);
      const double scale = pg.norm(pg.push(field_value(af, params, pg.u))) *
                           pg.norm(pg.push(field_value(bf, params, pg.u)));
      acc.add(pg.norm(pg.push(off)) / std::max(scale, 1e-300), pg.u);
    }
    out.push_back(acc.finish(id, anchor, kFoliation, ctx.tol.get(id), ctx.seed));
  };
  integrability("invariant_integrability", "[X,Y] in D + <xi>", dx);
  integrability("slant_integrability", "[Z,W] in D^theta", th);
  return out;
}

} // namespace kv::distribution
