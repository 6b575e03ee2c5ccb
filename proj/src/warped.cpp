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

#include "warped.hpp"

#include "decomposition.hpp"
#include "error.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kv::warped {

using decomposition::pf_split;

namespace {

const std::string kWarp = "warped product";
const std::string kMixedH = "mixed h identities";
const std::string kChar = "warp characterization";
const std::string kIneq = "h norm inequality";
const std::string kEq = "equality case";
const std::string kCR = "contact CR";

bool contains(const std::vector<int> &v, int i) { return std::find(v.begin(), v.end(), i) != v.end(); }

bool same_set(std::vector<int> a, std::vector<int> b)
{
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

Mat block(const Mat &m, const std::vector<int> &rows, const std::vector<int> &cols)
{
  Mat out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Index>(i), static_cast<Index>(j)) = m(rows[i], cols[j]);
  return out;
}

Vec h_of(const PointGeometry &pg, const Vec &a, const Vec &b)
{
  return immersion::second_fundamental_form(pg, pg.param_coords(a), pg.param_coords(b));
}

/// Gram-Schmidt of v against an orthonormal list; empty vector when dependent.
std::optional<Vec> orthonormal_against(const PointGeometry &pg, Vec v, const std::vector<Vec> &list)
{
  const double n0 = pg.norm(v);
  for (int sweep = 0; sweep < 2; ++sweep)
    for (const auto &e : list)
      v -= pg.inner(v, e) * e;
  const double n1 = pg.norm(v);
  if (!(n1 > 1e-8 * n0))
    return std::nullopt;
  return Vec(v / n1);
}

double residual_scale(const PointGeometry &pg, std::initializer_list<Vec> vs)
{
  double p = 1.0;
  for (const auto &v : vs)
    p *= pg.norm(v);
  return std::max(p, 1e-300);
}

} // namespace

WarpValue warp_at(const immersion::Immersion &imm, const WarpSpec &warp, const Vec &u)
{
  const int n = imm.n();
  std::vector<Jet2> seeds;
  for (int i = 0; i < n; ++i)
    seeds.push_back(Jet2::variable(u(i), n, i));
  const Jet2 f = expr::Compiled(warp.warping, imm.params()).eval(seeds, n);
  WarpValue w;
  w.f = f.value();
  if (!(w.f > 0.0))
    throw GeometryError("warping function is not positive (f = " + std::to_string(w.f) + ")");
  w.dlnf = f.gradient() / w.f;
  return w;
}

double warp_gradient_norm(const immersion::Immersion &imm, const WarpSpec &warp, const Vec &u)
{
  const auto w = warp_at(imm, warp, u);
  const Mat g = immersion::induced_metric(imm, u);
  const Mat g1 = block(g, warp.factor1, warp.factor1);
  Vec d(static_cast<Index>(warp.factor1.size()));
  for (std::size_t i = 0; i < warp.factor1.size(); ++i)
    d(static_cast<Index>(i)) = w.dlnf(warp.factor1[i]);
  // orthonormal frame e = L^{-T}: sum_i e_i(ln f)^2 = |L^{-1} d|^2
  Eigen::LLT<Mat> llt(g1);
  const Vec y = llt.matrixL().solve(d);
  return y.squaredNorm();
}

std::vector<Vec> AdaptedFrames::tangent() const
{
  auto v = d;
  v.insert(v.end(), theta.begin(), theta.end());
  return v;
}

std::vector<Vec> AdaptedFrames::normal() const
{
  auto v = normal_f;
  v.insert(v.end(), nu.begin(), nu.end());
  return v;
}

AdaptedFrames build_adapted_frames(const PointGeometry &pg, const SplitSpec &split, double theta)
{
  if (theta <= 1e-6 || theta >= std::numbers::pi / 2 - 1e-6)
    throw GeometryError("adapted frames need a proper slant angle");
  const double sec = 1.0 / std::cos(theta);
  const double csc = 1.0 / std::sin(theta);
  const Mat &phi = pg.ambient.phi;

  AdaptedFrames fr;
  std::vector<Vec> firsts;
  for (int a : split.d)
  {
    if (auto e = orthonormal_against(pg, pg.jacobian.col(a), fr.d))
    {
      fr.d.push_back(*e);
      fr.d.push_back(phi * *e);
      firsts.push_back(*e);
    }
  }
  // reorder to e_1..e_t, phi e_1..phi e_t
  {
    std::vector<Vec> ordered = firsts;
    for (const auto &e : firsts)
      ordered.push_back(phi * e);
    fr.d = ordered;
  }
  fr.t = static_cast<int>(firsts.size());
  fr.d.push_back(pg.ambient.xi / pg.norm(pg.ambient.xi));

  for (int a : split.theta)
  {
    if (auto e = orthonormal_against(pg, pg.jacobian.col(a), fr.theta))
    {
      fr.theta.push_back(*e);
      fr.theta.push_back(sec * pf_split(pg, *e).p);
    }
  }
  fr.s = static_cast<int>(fr.theta.size() / 2);

  for (std::size_t j = 0; j < fr.theta.size(); j += 2)
  {
    const Vec &e = fr.theta[j];
    const Vec pe = pf_split(pg, e).p;
    fr.normal_f.push_back(csc * pf_split(pg, e).f);
    fr.normal_f.push_back(csc * sec * pf_split(pg, pe).f);
  }

  const int n = pg.n();
  const int dim = pg.dim();
  if (2 * fr.t + 1 + 2 * fr.s != n)
    throw GeometryError("adapted frame dimensions do not add up: 2t+1+2s = " +
                        std::to_string(2 * fr.t + 1 + 2 * fr.s) + ", n = " + std::to_string(n));

  std::vector<Vec> all = fr.tangent();
  all.insert(all.end(), fr.normal_f.begin(), fr.normal_f.end());
  std::vector<Vec> candidates;
  for (int k = 0; k < dim; ++k)
    candidates.push_back(Vec::Unit(dim, k));
  fr.nu = immersion::complete_orthonormal(all, candidates, pg.ambient.metric,
                                          static_cast<std::size_t>(dim - n - 2 * fr.s));
  all.insert(all.end(), fr.nu.begin(), fr.nu.end());
  fr.orthonormality = immersion::orthonormality_residual(all, pg.ambient.metric);
  return fr;
}

double h_norm_squared(const PointGeometry &pg, const std::vector<Vec> &tangent, const std::vector<Vec> &normal)
{
  double sum = 0.0;
  for (const auto &a : tangent)
    for (const auto &b : tangent)
    {
      const Vec h = h_of(pg, a, b);
      for (const auto &e : normal)
      {
        const double c = pg.inner(h, e);
        sum += c * c;
      }
    }
  return sum;
}

HNorm h_norm(const PointGeometry &pg, const AdaptedFrames &fr)
{
  auto part = [&](const std::vector<Vec> &as, const std::vector<Vec> &bs, const std::vector<Vec> &ns) {
    double sum = 0.0;
    for (const auto &a : as)
      for (const auto &b : bs)
      {
        const Vec h = h_of(pg, a, b);
        for (const auto &e : ns)
        {
          const double c = pg.inner(h, e);
          sum += c * c;
        }
      }
    return sum;
  };
  HNorm out;
  out.lhs = h_norm_squared(pg, fr.tangent(), fr.normal());
  out.dd = part(fr.d, fr.d, fr.normal_f);
  out.mixed = part(fr.d, fr.theta, fr.normal_f);
  out.tt = part(fr.theta, fr.theta, fr.normal_f);
  out.nu = part(fr.tangent(), fr.tangent(), fr.nu);
  return out;
}

double h_norm_bound(int s, double theta, double grad_norm2)
{
  const double csc = 1.0 / std::sin(theta);
  const double cot = std::cos(theta) / std::sin(theta);
  return 4.0 * s * (csc * csc + cot * cot) * (grad_norm2 - 1.0);
}

WarpedResult warped_checks(const Context &ctx, const WarpSpec &warp, const distribution::Classification &cls)
{
  WarpedResult res;
  auto &out = res.records;
  const auto &imm = *ctx.imm;
  const auto &split = ctx.split;
  const auto tol = [&](const char *id) { return ctx.tol.get(id); };

  // warping values at every point
  std::vector<WarpValue> wv;
  {
    Accumulator acc;
    std::string failure;
    for (const auto &pg : ctx.points)
    {
      try
      {
        wv.push_back(warp_at(imm, warp, pg.u));
        acc.add(0.0, pg.u);
      }
      catch (const Error &e)
      {
        acc.add(1.0, pg.u);
        failure = e.what();
      }
    }
    auto r = acc.finish("warping_positive", "f > 0", kWarp, tol("warping_positive"), ctx.seed);
    r.note = failure;
    out.push_back(std::move(r));
    if (!out.back().pass)
      return res;
  }

  // block structure of the induced metric
  {
    Accumulator cross, quot;
    const std::size_t N = ctx.points.size();
    for (std::size_t k = 0; k < N; ++k)
    {
      const auto &pg = ctx.points[k];
      const Mat &g = pg.induced_metric;
      double c = 0.0;
      for (int a : warp.factor1)
        for (int b : warp.factor2)
          c = std::max(c, std::abs(g(a, b)) / std::sqrt(g(a, a) * g(b, b)));
      cross.add(c, pg.u);

      const Mat q0 = block(g, warp.factor2, warp.factor2) / (wv[k].f * wv[k].f);
      double worst = 0.0;
      for (std::size_t j = 1; j <= std::min<std::size_t>(3, N - 1); ++j)
      {
        Vec u1 = pg.u;
        const Vec &other = ctx.points[(k + j) % N].u;
        for (int a : warp.factor1)
          u1(a) = other(a);
        try
        {
          const Mat g1 = immersion::induced_metric(imm, u1);
          const double f1 = warp_at(imm, warp, u1).f;
          const Mat q1 = block(g1, warp.factor2, warp.factor2) / (f1 * f1);
          worst = std::max(worst, (q1 - q0).cwiseAbs().maxCoeff() / q0.cwiseAbs().maxCoeff());
        }
        catch (const Error &)
        {
          worst = std::numeric_limits<double>::infinity();
        }
      }
      quot.add(worst, pg.u);
    }
    out.push_back(cross.finish("block_metric_cross", "g(factor1, factor2) = 0", kWarp, tol("block_metric_cross"),
                               ctx.seed));
    out.push_back(quot.finish("block_metric_quotient", "factor2 block = f^2 g_2(factor2 only)", kWarp,
                              tol("block_metric_quotient"), ctx.seed));
  }

  // warp connection from intrinsic Christoffels, and the gradient norm
  std::vector<double> grad2(ctx.points.size(), 0.0);
  {
    Accumulator conn;
    double gmin = std::numeric_limits<double>::infinity(), gmax = -gmin, gsum = 0.0;
    for (std::size_t k = 0; k < ctx.points.size(); ++k)
    {
      const auto &pg = ctx.points[k];
      const auto ic = immersion::induced_connection(imm, pg.u);
      const Mat &g = ic.metric;
      double worst = 0.0;
      for (int a : warp.factor1)
        for (int b : warp.factor2)
        {
          Vec v(pg.n());
          for (int c = 0; c < pg.n(); ++c)
            v(c) = ic.gamma(c, a, b);
          v(b) -= wv[k].dlnf(a);
          worst = std::max(worst, std::sqrt(std::max(0.0, v.dot(g * v))) / std::sqrt(g(a, a) * g(b, b)));
        }
      conn.add(worst, pg.u);
      grad2[k] = warp_gradient_norm(imm, warp, pg.u);
      gmin = std::min(gmin, grad2[k]);
      gmax = std::max(gmax, grad2[k]);
      gsum += grad2[k];
    }
    out.push_back(conn.finish("warp_connection", "nabla_X V = X(ln f) V", kWarp, tol("warp_connection"), ctx.seed));
    CheckRecord r;
    r.id = "warp_gradient_norm";
    r.anchor = "|grad^T ln f|^2";
    r.group = kWarp;
    r.diagnostic = true;
    r.pass = true;
    r.max_residual = gmax;
    r.mean_residual = gsum / static_cast<double>(ctx.points.size());
    r.samples = ctx.points.size();
    r.seed = ctx.seed;
    r.values = {{"min", gmin}, {"max", gmax}};
    r.note = "value, not a residual";
    out.push_back(std::move(r));
  }

  // xi conditions or the Case-1 verdict
  const bool xi_in_1 = split.xi >= 0 && contains(warp.factor1, split.xi);
  const bool xi_in_2 = split.xi >= 0 && contains(warp.factor2, split.xi);
  if (xi_in_2)
  {
    Accumulator acc;
    for (std::size_t k = 0; k < ctx.points.size(); ++k)
    {
      double worst = 0.0;
      for (int a : warp.factor1)
        worst = std::max(worst, std::abs(wv[k].dlnf(a)));
      acc.add(worst, ctx.points[k].u);
    }
    auto r = acc.finish("xi_case1_trivial", "xi in the second factor forces a constant warping", kWarp,
                        tol("xi_case1_trivial"), ctx.seed);
    r.note = r.pass ? "trivial warped product (Riemannian product)"
                    : "non-constant warping contradicts xi tangent to the second factor";
    out.push_back(std::move(r));
    out.push_back(skipped_record("warp_characterization", "A_FZ phiX - A_FPZ X = sin^2(theta)(X(mu) - eta(X))Z",
                                 kChar, "xi tangent to the second factor: only the Case-1 verdict applies"));
    return res;
  }
  if (xi_in_1)
  {
    Accumulator xd, hx;
    auto rng = ctx.rng("h_factor2_xi");
    for (std::size_t k = 0; k < ctx.points.size(); ++k)
    {
      const auto &pg = ctx.points[k];
      const Vec xi = pg.param_coords(pg.ambient.xi);
      xd.add(std::abs(wv[k].dlnf.dot(xi) - 1.0), pg.u);
      std::vector<Vec> zs;
      for (int b : warp.factor2)
        zs.push_back(Vec::Unit(pg.n(), b));
      zs.push_back(random_coefficients(rng, warp.factor2, pg.n()));
      double worst = 0.0;
      for (const auto &z : zs)
        worst = std::max(worst, pg.norm(immersion::second_fundamental_form(pg, z, xi)) /
                                  residual_scale(pg, {pg.push(z), pg.ambient.xi}));
      hx.add(worst, pg.u);
    }
    out.push_back(xd.finish("xi_warp_derivative", "xi(ln f) = 1", kWarp, tol("xi_warp_derivative"), ctx.seed));
    out.push_back(hx.finish("h_factor2_xi", "h(Z, xi) = 0", kWarp, tol("h_factor2_xi"), ctx.seed));
  }
  else
    out.push_back(skipped_record("xi_warp_derivative", "xi(ln f) = 1", kWarp, "no xi direction in the first factor"));

  const bool split_match = same_set(warp.factor1, split.d_and_xi()) && same_set(warp.factor2, split.theta);
  if (!split_match)
  {
    out.push_back(skipped_record("warp_characterization", "A_FZ phiX - A_FPZ X = sin^2(theta)(X(mu) - eta(X))Z",
                                 kChar, "warp factors do not match the split"));
    return res;
  }

  // slant angle used by the theta-dependent identities
  std::optional<double> theta = cls.slant_angle;
  std::string theta_source = "measured";
  if (!theta && warp.slant_theta)
  {
    theta = warp.slant_theta;
    theta_source = "declared";
  }
  if (warp.slant_theta && cls.slant_angle)
  {
    CheckRecord r;
    r.id = "slant_angle_declared";
    r.anchor = "measured slant angle equals the declared one";
    r.group = kWarp;
    r.max_residual = r.mean_residual = std::abs(*cls.slant_angle - *warp.slant_theta);
    r.tolerance = tol("slant_angle_declared");
    r.pass = r.max_residual <= r.tolerance;
    r.samples = 1;
    r.seed = ctx.seed;
    out.push_back(std::move(r));
  }
  if (!theta)
  {
    out.push_back(skipped_record("warp_characterization", "A_FZ phiX - A_FPZ X = sin^2(theta)(X(mu) - eta(X))Z",
                                 kChar, "no slant angle measured or declared"));
    return res;
  }
  const double th = *theta;
  const double c2 = std::cos(th) * std::cos(th);
  const double s2 = std::sin(th) * std::sin(th);
  const auto dx = split.d_and_xi();
  const auto &tz = split.theta;
  const int kt = ctx.tuples;

  // mixed h identities
  if (!ctx.kenmotsu_verified)
  {
    for (const char *id : {"mixed_h_identity_base", "mixed_h_identity_phix", "mixed_h_identity_pz",
                           "mixed_h_identity_pw", "mixed_h_identity_pz_pw", "invariant_h_orthogonal_fd",
                           "mixed_h_antisymmetry"})
      out.push_back(skipped_record(id, "", kMixedH, "ambient not Kenmotsu: mixed h identities skipped"));
  }
  else
  {
    Accumulator base, phix, pz, pw, pzpw, orth, anti;
    auto rng = ctx.rng("mixed_h_identities");
    // (eta(X) - X ln f) g(Z,PW) - phiX(ln f) g(Z,W)
    auto eq_base = [&](const PointGeometry &pg, const Vec &dl, const Vec &x, const Vec &z, const Vec &w) {
      const Vec xa = pg.push(x), za = pg.push(z), wa = pg.push(w);
      const auto sw = pf_split(pg, wa);
      const double lhs = pg.inner(immersion::second_fundamental_form(pg, x, z), sw.f);
      const double phixl = dl.dot(pg.param_coords(pg.ambient.phi * xa));
      const double rhs = (pg.ambient.eta.dot(xa) - dl.dot(x)) * pg.inner(za, sw.p) - phixl * pg.inner(za, wa);
      return std::abs(lhs - rhs) / residual_scale(pg, {xa, za, wa});
    };
    for (int k = 0; k < kt; ++k)
    {
      const std::size_t idx = static_cast<std::size_t>(k) % ctx.points.size();
      const auto &pg = ctx.points[idx];
      const Vec &dl = wv[idx].dlnf;
      const Vec x = random_coefficients(rng, dx, pg.n());
      const Vec y = random_coefficients(rng, dx, pg.n());
      const Vec z = random_coefficients(rng, tz, pg.n());
      const Vec w = random_coefficients(rng, tz, pg.n());
      const Vec xa = pg.push(x), za = pg.push(z), wa = pg.push(w);
      const double scale = residual_scale(pg, {xa, za, wa});
      const auto sz = pf_split(pg, za);
      const auto sw = pf_split(pg, wa);
      const Vec fpw = pf_split(pg, sw.p).f;
      const Vec pzc = pg.param_coords(sz.p);
      const double xl = dl.dot(x);
      const double etax = pg.ambient.eta.dot(xa);
      const double phixl = dl.dot(pg.param_coords(pg.ambient.phi * xa));
      const double gzw = pg.inner(za, wa);
      const double gzpw = pg.inner(za, sw.p);

      base.add(eq_base(pg, dl, x, z, w), pg.u);
      phix.add(eq_base(pg, dl, pg.param_coords(pg.ambient.phi * xa), z, w) * pg.norm(pg.ambient.phi * xa) /
                 std::max(pg.norm(xa), 1e-300),
               pg.u);

      const double h_pz_fw = pg.inner(immersion::second_fundamental_form(pg, x, pzc), sw.f);
      const double h_z_fpw = pg.inner(immersion::second_fundamental_form(pg, x, z), fpw);
      const double h_pz_fpw = pg.inner(immersion::second_fundamental_form(pg, x, pzc), fpw);
      pz.add(std::abs(h_pz_fw - (phixl * gzpw - c2 * (xl - etax) * gzw)) / scale, pg.u);
      pw.add(std::abs(h_z_fpw - (c2 * (xl - etax) * gzw - phixl * gzpw)) / scale, pg.u);
      pzpw.add(std::abs(h_pz_fpw - (-c2 * phixl * gzw - c2 * (xl - etax) * gzpw)) / scale, pg.u);
      anti.add(std::abs(h_pz_fw + h_z_fpw) / scale, pg.u);

      const Vec ya = pg.push(y);
      orth.add(std::abs(pg.inner(immersion::second_fundamental_form(pg, x, y), sz.f)) /
                 residual_scale(pg, {xa, ya, za}),
               pg.u);
    }
    out.push_back(base.finish("mixed_h_identity_base", "g(h(X,Z),FW) = (eta(X) - X ln f) g(Z,PW) - phiX(ln f) g(Z,W)",
                              kMixedH, tol("mixed_h_identity_base"), ctx.seed));
    out.push_back(phix.finish("mixed_h_identity_phix", "the same identity with X replaced by phi X", kMixedH,
                              tol("mixed_h_identity_phix"), ctx.seed));
    out.push_back(pz.finish("mixed_h_identity_pz",
                            "g(h(X,PZ),FW) = phiX(ln f) g(Z,PW) - cos^2(theta)(X ln f - eta(X)) g(Z,W)", kMixedH,
                            tol("mixed_h_identity_pz"), ctx.seed));
    out.push_back(pw.finish("mixed_h_identity_pw",
                            "g(h(X,Z),FPW) = cos^2(theta)(X ln f - eta(X)) g(Z,W) - phiX(ln f) g(Z,PW)", kMixedH,
                            tol("mixed_h_identity_pw"), ctx.seed));
    out.push_back(pzpw.finish("mixed_h_identity_pz_pw",
                              "g(h(X,PZ),FPW) = -cos^2(theta) phiX(ln f) g(Z,W) - cos^2(theta)(X ln f - eta(X)) g(Z,PW)",
                              kMixedH, tol("mixed_h_identity_pz_pw"), ctx.seed));
    out.push_back(orth.finish("invariant_h_orthogonal_fd", "g(h(X,Y),FZ) = 0", kMixedH,
                              tol("invariant_h_orthogonal_fd"), ctx.seed));
    out.push_back(anti.finish("mixed_h_antisymmetry", "g(h(X,PZ),FW) = -g(h(X,Z),FPW)", kMixedH,
                              tol("mixed_h_antisymmetry"), ctx.seed));
  }

  // characterization identity with mu = ln f
  {
    Accumulator chr, grad, fit;
    auto rng = ctx.rng("warp_characterization");
    for (int k = 0; k < kt; ++k)
    {
      const std::size_t idx = static_cast<std::size_t>(k) % ctx.points.size();
      const auto &pg = ctx.points[idx];
      const Vec &dl = wv[idx].dlnf;
      const Vec x = random_coefficients(rng, dx, pg.n());
      const Vec xa = pg.push(x);
      const double etax = pg.ambient.eta.dot(xa);
      const Vec phix = pg.param_coords(pg.ambient.phi * xa);

      auto lhs_of = [&](const Vec &z) {
        const auto sz = pf_split(pg, pg.push(z));
        const Vec fpz = pf_split(pg, sz.p).f;
        return Vec(immersion::shape_operator(pg, sz.f, phix) - immersion::shape_operator(pg, fpz, x));
      };
      const Vec z = random_coefficients(rng, tz, pg.n());
      const Vec za = pg.push(z);
      const Vec v = lhs_of(z) - s2 * (dl.dot(x) - etax) * za;
      chr.add(pg.norm(v) / residual_scale(pg, {xa, za}), pg.u);

      // W(ln f) on D^theta
      const Vec w = random_coefficients(rng, tz, pg.n());
      grad.add(std::abs(dl.dot(w)) / residual_scale(pg, {pg.push(w)}), pg.u);

      // least-squares X(mu) from the identity over the D^theta basis
      double num = 0.0, den = 0.0;
      std::vector<std::pair<Vec, Vec>> terms;
      for (int b : tz)
      {
        const Vec zb = Vec::Unit(pg.n(), b);
        const Vec zba = pg.push(zb);
        const Vec l = lhs_of(zb) + s2 * etax * zba;
        const Vec r = s2 * zba;
        num += pg.inner(l, r);
        den += pg.inner(r, r);
        terms.emplace_back(l, r);
      }
      const double mu_x = num / den;
      fit.add(std::abs(mu_x - dl.dot(x)) / residual_scale(pg, {xa}), pg.u);
    }
    auto r = chr.finish("warp_characterization", "A_FZ phiX - A_FPZ X = sin^2(theta)(X(mu) - eta(X))Z, mu = ln f",
                        kChar, tol("warp_characterization"), ctx.seed);
    r.values.emplace_back("theta", th);
    if (theta_source == "declared")
      r.note = "slant angle taken from the warp declaration";
    std::vector<std::string> why;
    if (!ctx.kenmotsu_verified)
      why.push_back("ambient not Kenmotsu");
    if (!cls.semi_slant_family())
      why.push_back("split is not a semi-slant classification");
    if (!why.empty())
    {
      std::string s = "residual reported but the characterization does not apply: ";
      for (std::size_t i = 0; i < why.size(); ++i)
        s += (i ? "; " : "") + why[i];
      r.note = r.note.empty() ? s : r.note + "; " + s;
      r.pass = false;
    }
    out.push_back(std::move(r));
    out.push_back(grad.finish("warp_characterization_slant_gradient", "W(mu) = 0 on D^theta", kChar,
                              tol("warp_characterization_slant_gradient"), ctx.seed));
    auto m = fit.finish("warp_mu_fit", "least-squares X(mu) against X(ln f)", kChar, tol("warp_mu_fit"), ctx.seed);
    m.diagnostic = true;
    out.push_back(std::move(m));
  }

  // leaf umbilicity of D^theta: g(nabla_Z W, X) = -X(ln f) g(Z,W)
  {
    Accumulator acc;
    auto rng = ctx.rng("slant_leaf_umbilicity");
    for (int k = 0; k < kt; ++k)
    {
      const std::size_t idx = static_cast<std::size_t>(k) % ctx.points.size();
      const auto &pg = ctx.points[idx];
      const Vec x = random_coefficients(rng, dx, pg.n());
      const Vec z = random_coefficients(rng, tz, pg.n());
      const Vec w = random_coefficients(rng, tz, pg.n());
      const Vec xa = pg.push(x), za = pg.push(z), wa = pg.push(w);
      const double lhs = pg.inner(pg.connection(z, w), xa);
      acc.add(std::abs(lhs + wv[idx].dlnf.dot(x) * pg.inner(za, wa)) / residual_scale(pg, {xa, za, wa}), pg.u);
    }
    out.push_back(acc.finish("slant_leaf_umbilicity", "g(h^theta(Z,W), X) = -X(ln f) g(Z,W)", kEq,
                             tol("slant_leaf_umbilicity"), ctx.seed));
  }

  const bool cr = cls.kind == distribution::Kind::ContactCR ||
                  (!cls.slant_angle && th >= std::numbers::pi / 2 - 1e-6);
  if (cr)
  {
    // contact CR specializations
    Accumulator shape, bound, echo;
    auto rng = ctx.rng("cr_shape_operator_identity");
    const int s = static_cast<int>(tz.size());
    double min_margin = std::numeric_limits<double>::infinity(), lhs_at = 0.0, rhs_at = 0.0, max_lhs = 0.0;
    for (std::size_t k = 0; k < ctx.points.size(); ++k)
    {
      const auto &pg = ctx.points[k];
      double worst_echo = 0.0;
      std::vector<Vec> fd;
      for (int b : tz)
      {
        const Vec za = pg.jacobian.col(b);
        const auto sz = pf_split(pg, za);
        worst_echo = std::max(worst_echo, pg.norm(sz.p) / pg.norm(za));
        fd.push_back(sz.f);
      }
      echo.add(worst_echo, pg.u);

      std::vector<Vec> fd_frame;
      for (const auto &v : fd)
        if (auto e = orthonormal_against(pg, v, fd_frame))
          fd_frame.push_back(*e);
      std::vector<Vec> tangent = pg.orthonormal_tangent.vectors;
      const double lhs = h_norm_squared(pg, tangent, fd_frame);
      const double rhs = 2.0 * s * (grad2[k] - 1.0);
      bound.add(std::max(0.0, rhs - lhs), pg.u);
      max_lhs = std::max(max_lhs, lhs);
      if (lhs - rhs < min_margin)
      {
        min_margin = lhs - rhs;
        lhs_at = lhs;
        rhs_at = rhs;
      }
    }
    if (ctx.kenmotsu_verified)
    {
      for (int k = 0; k < kt; ++k)
      {
        const std::size_t idx = static_cast<std::size_t>(k) % ctx.points.size();
        const auto &pg = ctx.points[idx];
        const Vec x = random_coefficients(rng, dx, pg.n());
        const Vec z = random_coefficients(rng, tz, pg.n());
        const Vec xa = pg.push(x), za = pg.push(z);
        const Vec fz = pf_split(pg, za).f;
        const double phixl = wv[idx].dlnf.dot(pg.param_coords(pg.ambient.phi * xa));
        const Vec v = immersion::shape_operator(pg, fz, x) + phixl * za;
        shape.add(pg.norm(v) / residual_scale(pg, {xa, za}), pg.u);
      }
      out.push_back(shape.finish("cr_shape_operator_identity", "A_phiZ X = -phiX(mu) Z", kCR,
                                 tol("cr_shape_operator_identity"), ctx.seed));
    }
    else
      out.push_back(skipped_record("cr_shape_operator_identity", "A_phiZ X = -phiX(mu) Z", kCR,
                                   "ambient not Kenmotsu: skipped"));
    auto b = bound.finish("cr_h_norm_lower_bound", "|h|^2 >= 2s(|grad^T ln f|^2 - 1)", kCR,
                          tol("cr_h_norm_lower_bound"), ctx.seed);
    b.values = {{"min_margin", min_margin}, {"lhs", lhs_at}, {"rhs", rhs_at}, {"s", static_cast<double>(s)}};
    out.push_back(std::move(b));
    out.push_back(echo.finish("cr_slant_echo", "PZ = 0 on D^perp", kCR, tol("cr_slant_echo"), ctx.seed));
    InequalitySummary sum;
    sum.lhs = lhs_at;
    sum.rhs = rhs_at;
    sum.min_margin = min_margin;
    sum.max_lhs = max_lhs;
    sum.equality_verdict = "not evaluated (contact CR bound)";
    res.inequality = sum;
    out.push_back(skipped_record("h_norm_lower_bound", "|h|^2 >= 4s(csc^2 + cot^2)(|grad^T ln f|^2 - 1)", kIneq,
                                 "slant angle at pi/2: the contact CR bound applies instead"));
    return res;
  }

  if (th <= 1e-6)
  {
    out.push_back(skipped_record("h_norm_lower_bound", "|h|^2 >= 4s(csc^2 + cot^2)(|grad^T ln f|^2 - 1)", kIneq,
                                 "slant angle is 0: csc undefined"));
    return res;
  }

  // adapted frames and the inequality
  Accumulator ortho, margin, partial, invariance, hdd, htt, hmix, mean_curv;
  InequalitySummary sum;
  sum.min_margin = std::numeric_limits<double>::infinity();
  double rhs_max = -std::numeric_limits<double>::infinity();
  double rhs_min = std::numeric_limits<double>::infinity();
  double abs_margin = 0.0;
  std::string frame_failure;
  for (std::size_t k = 0; k < ctx.points.size(); ++k)
  {
    const auto &pg = ctx.points[k];
    AdaptedFrames fr;
    try
    {
      fr = build_adapted_frames(pg, split, th);
    }
    catch (const Error &e)
    {
      frame_failure = e.what();
      ortho.add(std::numeric_limits<double>::infinity(), pg.u);
      continue;
    }
    ortho.add(fr.orthonormality, pg.u);
    const auto hn = h_norm(pg, fr);
    const double rhs = h_norm_bound(fr.s, th, grad2[k]);
    const double m = hn.lhs - rhs;
    margin.add(std::max(0.0, -m), pg.u);
    abs_margin = std::max(abs_margin, std::abs(m));
    partial.add(std::abs(hn.lhs - (hn.dd + 2.0 * hn.mixed + hn.tt + hn.nu)) / std::max(1.0, hn.lhs), pg.u);
    const double other = h_norm_squared(pg, pg.orthonormal_tangent.vectors, pg.normal.vectors);
    invariance.add(std::abs(hn.lhs - other) / std::max(1.0, hn.lhs), pg.u);
    if (m < sum.min_margin)
    {
      sum.min_margin = m;
      sum.lhs = hn.lhs;
      sum.rhs = rhs;
    }
    sum.max_lhs = std::max(sum.max_lhs, hn.lhs);
    rhs_max = std::max(rhs_max, rhs);
    rhs_min = std::min(rhs_min, rhs);

    double dd = 0.0, tt = 0.0, mix = 0.0;
    for (const auto &a : fr.d)
      for (const auto &b : fr.d)
        dd = std::max(dd, pg.norm(h_of(pg, a, b)));
    for (const auto &a : fr.theta)
      for (const auto &b : fr.theta)
        tt = std::max(tt, pg.norm(h_of(pg, a, b)));
    for (const auto &a : fr.d)
      for (const auto &b : fr.theta)
      {
        const Vec h = h_of(pg, a, b);
        for (const auto &e : fr.nu)
          mix = std::max(mix, std::abs(pg.inner(h, e)));
      }
    hdd.add(dd, pg.u);
    htt.add(tt, pg.u);
    hmix.add(mix, pg.u);
    Vec H = Vec::Zero(pg.dim());
    for (const auto &e : fr.tangent())
      H += h_of(pg, e, e);
    mean_curv.add(pg.norm(H) / pg.n(), pg.u);
  }
  {
    auto r = ortho.finish("adapted_frames_orthonormal", "adapted frames orthonormal", kIneq,
                          tol("adapted_frames_orthonormal"), ctx.seed);
    r.note = frame_failure;
    out.push_back(std::move(r));
  }
  {
    auto r = margin.finish("h_norm_lower_bound", "|h|^2 >= 4s(csc^2 + cot^2)(|grad^T ln f|^2 - 1)", kIneq,
                           tol("h_norm_lower_bound"), ctx.seed);
    r.values = {{"min_margin", sum.min_margin}, {"lhs", sum.lhs},      {"rhs", sum.rhs},
                {"rhs_min", rhs_min},           {"rhs_max", rhs_max}};
    out.push_back(std::move(r));
  }
  out.push_back(partial.finish("h_norm_partial_sums", "|h|^2 = DD + 2 mixed + theta-theta + nu", kIneq,
                               tol("h_norm_partial_sums"), ctx.seed));
  out.push_back(invariance.finish("h_norm_frame_invariance", "|h|^2 independent of the orthonormal frames", kIneq,
                                  tol("h_norm_frame_invariance"), ctx.seed));

  auto diag = [&](Accumulator &a, const char *id, const char *anchor) {
    auto r = a.finish(id, anchor, kEq, tol(id), ctx.seed);
    r.diagnostic = true;
    return r;
  };
  auto rdd = diag(hdd, "equality_h_invariant", "h(D, D) = 0");
  auto rtt = diag(htt, "equality_h_slant", "h(D^theta, D^theta) = 0");
  auto rmx = diag(hmix, "equality_h_mixed_normal", "h(D, D^theta) in F D^theta");
  auto rmc = diag(mean_curv, "mean_curvature_norm", "|H| (minimality)");
  const bool eq = rdd.pass && rtt.pass && rmx.pass;
  if (!eq)
    sum.equality_verdict = "strict";
  else if (rhs_max < -tol("h_norm_lower_bound"))
    sum.equality_verdict = "equality unattainable (rhs < 0)";
  else
    sum.equality_verdict = "equality";
  out.push_back(std::move(rdd));
  out.push_back(std::move(rtt));
  out.push_back(std::move(rmx));
  out.push_back(std::move(rmc));
  if (sum.equality_verdict == "equality")
  {
    CheckRecord r;
    r.id = "equality_margin_consistency";
    r.anchor = "equality case implies lhs = rhs";
    r.group = kEq;
    r.tolerance = tol("equality_margin_consistency");
    r.max_residual = r.mean_residual = abs_margin;
    r.pass = r.max_residual <= r.tolerance;
    r.samples = ctx.points.size();
    r.seed = ctx.seed;
    out.push_back(std::move(r));
  }
  res.inequality = sum;
  return res;
}

} // namespace kv::warped
