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

#include "runner.hpp"

#include "crosscheck.hpp"
#include "decomposition.hpp"
#include "distribution.hpp"
#include "error.hpp"
#include "warped.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace kv::runner {

namespace {

std::string point_text(const Vec &u)
{
  std::ostringstream os;
  os.precision(6);
  os << "(";
  for (Index i = 0; i < u.size(); ++i)
    os << (i ? ", " : "") << u(i);
  os << ")";
  return os.str();
}

/// Structure axioms, positivity, compatibility and the Kenmotsu condition over
/// the ambient sample. Returns whether the Kenmotsu checks passed.
bool ambient_checks(const scenarios::Scenario &s, const Options &opt, const Tolerances &tol, std::uint64_t seed,
                    std::vector<CheckRecord> &out)
{
  const std::string group = "ambient";
  const auto &amb = *s.ambient;
  Accumulator ac, pd, comp, kphi, kxi;
  std::string pd_note;
  int wx = 0, wy = 0;
  double wphi = -1.0;
  for (const auto &p : scenarios::ambient_points(s, seed, opt.samples))
  {
    manifold::StructureEval ev;
    try
    {
      ev = manifold::evaluate_structure(amb, p);
      pd.add(0.0, p);
    }
    catch (const Error &e)
    {
      pd.add(1.0, p);
      pd_note = std::string(e.what()) + " at " + point_text(p);
      continue;
    }
    ac.add(manifold::check_almost_contact(ev, tol.get("almost_contact")).max(), p);
    comp.add(manifold::metric_compatibility_residual(ev), p);
    const auto k = manifold::check_kenmotsu(ev, tol.get("kenmotsu_nabla_phi"));
    kphi.add(k.nabla_phi, p);
    kxi.add(k.nabla_xi, p);
    if (k.nabla_phi > wphi)
    {
      wphi = k.nabla_phi;
      wx = k.worst_x;
      wy = k.worst_y;
    }
  }
  out.push_back(ac.finish("almost_contact", "phi^2 = -I + eta (x) xi, phi xi = 0, eta o phi = 0, eta(xi) = 1, "
                                            "g(phiX, phiY) = g(X,Y) - eta(X)eta(Y)",
                          group, tol.get("almost_contact"), seed));
  {
    auto r = pd.finish("metric_positive_definite", "g positive definite", group, tol.get("metric_positive_definite"),
                       seed);
    r.note = pd_note;
    out.push_back(std::move(r));
  }
  out.push_back(comp.finish("christoffel_compatibility", "nabla g = 0 for the computed Christoffel symbols", group,
                            tol.get("christoffel_compatibility"), seed));
  {
    auto r = kphi.finish("kenmotsu_nabla_phi", "(nabla_X phi)Y = g(phiX, Y) xi - eta(Y) phiX", group,
                         tol.get("kenmotsu_nabla_phi"), seed);
    const auto &c = amb.coords();
    r.values = {{"worst_x", wx}, {"worst_y", wy}};
    if (wphi >= 0.0)
      r.note = "largest residual at basis pair (d/d" + c[static_cast<std::size_t>(wx)] + ", d/d" +
               c[static_cast<std::size_t>(wy)] + ")";
    out.push_back(std::move(r));
  }
  out.push_back(
    kxi.finish("kenmotsu_nabla_xi", "nabla_X xi = X - eta(X) xi", group, tol.get("kenmotsu_nabla_xi"), seed));
  const auto n = out.size();
  return out[n - 1].pass && out[n - 2].pass && out[n - 5].pass;
}

void immersion_checks(const Context &ctx, double min_sigma, std::vector<CheckRecord> &out)
{
  const std::string group = "immersion";
  const auto &tol = ctx.tol;
  {
    CheckRecord r;
    r.id = "immersion_rank";
    r.anchor = "smallest singular value of the g-orthonormalized Jacobian above threshold";
    r.group = group;
    r.tolerance = tol.get("immersion_rank");
    r.max_residual = r.mean_residual = 0.0;
    r.pass = true;
    r.samples = ctx.points.size();
    r.seed = ctx.seed;
    r.values = {{"min_singular_value", min_sigma}};
    out.push_back(std::move(r));
  }
  Accumulator sym, nor, dual, selfadj, hxi, gauss;
  for (const auto &pg : ctx.points)
  {
    const int n = pg.n();
    double ws = 0.0, wn = 0.0, wg = 0.0;
    const auto ic = immersion::induced_connection(*ctx.imm, pg.u);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
      {
        const Vec ja = pg.jacobian.col(a), jb = pg.jacobian.col(b);
        const double scale = pg.norm(ja) * pg.norm(jb);
        // rebuilt without the mirrored storage
        const Vec hab = pg.normal_part(pg.second[static_cast<std::size_t>(a * n + b)] + pg.ambient.gamma.contract(ja, jb));
        const Vec hba = pg.normal_part(pg.second[static_cast<std::size_t>(b * n + a)] + pg.ambient.gamma.contract(jb, ja));
        ws = std::max(ws, pg.norm(hab - hba) / scale);
        const Vec &h = pg.h[static_cast<std::size_t>(a * n + b)];
        for (const auto &e : pg.orthonormal_tangent.vectors)
          wn = std::max(wn, std::abs(pg.inner(h, e)) / scale);
        Vec gi(n);
        for (int c = 0; c < n; ++c)
          gi(c) = ic.gamma(c, a, b);
        const Vec diff = pg.param_coords(pg.connection(Vec::Unit(n, a), Vec::Unit(n, b))) - gi;
        wg = std::max(wg, pg.norm(pg.push(diff)) / scale);
      }
    sym.add(ws, pg.u);
    nor.add(wn, pg.u);
    gauss.add(wg, pg.u);
    if (ctx.split.xi >= 0)
    {
      const Vec xi = pg.param_coords(pg.ambient.xi);
      double w = 0.0;
      for (int a = 0; a < n; ++a)
        w = std::max(w, pg.norm(immersion::second_fundamental_form(pg, Vec::Unit(n, a), xi)) /
                          (pg.norm(pg.jacobian.col(a)) * pg.norm(pg.ambient.xi)));
      hxi.add(w, pg.u);
    }
  }
  auto rng = ctx.rng("weingarten_duality");
  const int npts = std::min<int>(ctx.duality_points, static_cast<int>(ctx.points.size()));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int p = 0; p < npts; ++p)
  {
    const auto &pg = ctx.points[static_cast<std::size_t>(p)];
    const int n = pg.n();
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      all[static_cast<std::size_t>(i)] = i;
    for (int t = 0; t < ctx.tuples; ++t)
    {
      const Vec x = random_coefficients(rng, all, n);
      const Vec y = random_coefficients(rng, all, n);
      Vec nv = Vec::Zero(pg.dim());
      for (const auto &e : pg.normal.vectors)
        nv += normal(rng) * e;
      const Vec xa = pg.push(x), ya = pg.push(y);
      const double scale = pg.norm(xa) * pg.norm(ya) * pg.norm(nv);
      const Vec ax = immersion::shape_operator(pg, nv, x);
      const Vec ay = immersion::shape_operator(pg, nv, y);
      const double lhs = pg.inner(ax, ya);
      dual.add(std::abs(lhs - pg.inner(immersion::second_fundamental_form(pg, x, y), nv)) / scale, pg.u);
      selfadj.add(std::abs(lhs - pg.inner(xa, ay)) / scale, pg.u);
    }
  }
  out.push_back(sym.finish("h_symmetry", "h(X,Y) = h(Y,X)", group, tol.get("h_symmetry"), ctx.seed));
  out.push_back(nor.finish("h_normality", "h(X,Y) normal", group, tol.get("h_normality"), ctx.seed));
  out.push_back(dual.finish("weingarten_duality", "g(A_N X, Y) = g(h(X,Y), N)", group, tol.get("weingarten_duality"),
                            ctx.seed));
  out.push_back(selfadj.finish("shape_self_adjoint", "g(A_N X, Y) = g(X, A_N Y)", group,
                               tol.get("shape_self_adjoint"), ctx.seed));
  if (ctx.split.xi >= 0)
  {
    auto r = hxi.finish("h_xi_vanishing", "h(X, xi) = 0", group, tol.get("h_xi_vanishing"), ctx.seed);
    if (!ctx.kenmotsu_verified)
    {
      r.diagnostic = true;
      r.note = "diagnostic: only forced on a Kenmotsu ambient";
    }
    out.push_back(std::move(r));
  }
  out.push_back(gauss.finish("gauss_intrinsic_consistency",
                             "tangential part of the ambient derivative equals the induced Levi-Civita connection",
                             group, tol.get("gauss_intrinsic_consistency"), ctx.seed));
}

} // namespace

report::Report run(const scenarios::Scenario &s, const Options &opt)
{
  report::Report rep;
  rep.scenario = s.name;
  rep.description = s.description;
  const std::uint64_t seed = opt.seed.value_or(s.sampling.seed);
  rep.seed = seed;
  rep.tol_scale = opt.tol_scale;

  Context ctx;
  ctx.imm = s.immersion;
  ctx.split = s.split;
  ctx.seed = seed;
  ctx.tol.overrides = s.tolerances;
  ctx.tol.scale = opt.tol_scale;

  auto &out = rep.checks;
  ctx.kenmotsu_verified = ambient_checks(s, opt, ctx.tol, seed, out);

  const auto params = scenarios::parameter_points(s, seed, opt.samples);
  rep.samples = static_cast<int>(params.size());
  std::vector<std::string> failures;
  double min_sigma = std::numeric_limits<double>::infinity();
  for (const auto &u : params)
  {
    try
    {
      ctx.points.push_back(immersion::evaluate_point(*s.immersion, u));
      min_sigma = std::min(min_sigma, ctx.points.back().smallest_singular_value);
    }
    catch (const Error &e)
    {
      failures.push_back(std::string(e.what()) + " at u = " + point_text(u));
    }
  }
  if (!failures.empty() || ctx.points.empty())
  {
    CheckRecord r;
    r.id = "immersion_rank";
    r.anchor = "immersion evaluable and of full rank at every sample";
    r.group = "immersion";
    r.max_residual = static_cast<double>(failures.size());
    r.tolerance = 0.0;
    r.pass = false;
    r.samples = params.size();
    r.seed = seed;
    r.note = failures.empty() ? "no sample points" : failures.front();
    if (failures.size() > 1)
      r.note += " (and " + std::to_string(failures.size() - 1) + " more)";
    out.push_back(std::move(r));
    out.push_back(skipped_record("submanifold checks", "", "immersion",
                                 "sampling produced points where the immersion is not a regular map"));
    report::finalize_verdict(rep, s.expect);
    return rep;
  }

  immersion_checks(ctx, min_sigma, out);

  const auto cls = distribution::classify(ctx);
  out.insert(out.end(), cls.evidence.begin(), cls.evidence.end());
  rep.classification = report::ClassificationSummary{std::string(distribution::kind_name(cls.kind)), cls.slant_angle,
                                                     cls.spread};
  for (auto &r : decomposition::decomposition_checks(ctx, cls.slant_angle.value_or(std::nan(""))))
    out.push_back(std::move(r));
  for (auto &r : distribution::connection_identity_checks(ctx, cls))
    out.push_back(std::move(r));
  for (auto &r : distribution::foliation_checks(ctx, cls, s.warp.has_value()))
    out.push_back(std::move(r));

  if (s.warp)
  {
    auto w = warped::warped_checks(ctx, *s.warp, cls);
    for (auto &r : w.records)
      out.push_back(std::move(r));
    rep.inequality = w.inequality;
  }
  else
    out.push_back(skipped_record("warped product battery", "", "warped product", "no warped product declared"));

  report::finalize_verdict(rep, s.expect);
  return rep;
}

report::PaperReport check_paper(const Options &opt)
{
  report::PaperReport pr;
  std::vector<scenarios::Scenario> list;
  list.push_back(scenarios::builtin("example1"));
  for (double t : {std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 3})
    list.push_back(scenarios::builtin("example2", t));
  list.push_back(scenarios::builtin("example2_cr"));
  list.push_back(scenarios::builtin("example2_perturbed"));
  list.push_back(scenarios::builtin("example2_paper_literal"));
  for (const auto &s : list)
    pr.reports.push_back(run(s, opt));
  pr.reports.push_back(crosscheck::finite_difference_report(opt.seed.value_or(42), 20, opt.tol_scale));
  pr.expectations_met = std::all_of(pr.reports.begin(), pr.reports.end(),
                                    [](const report::Report &r) { return r.expectations_met; });
  return pr;
}

} // namespace kv::runner
