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

// Acceptance criteria: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "runner.hpp"
#include "crosscheck.hpp"
#include "scenarios.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#ifndef KENVERIFY_CLI_PATH
#error "KENVERIFY_CLI_PATH must name the CLI executable"
#endif

namespace {

using kv::CheckRecord;
using kv::report::Report;
using Clock = std::chrono::steady_clock;

struct Outcome
{
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string &what)
  {
    if (!ok)
    {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const CheckRecord *get(const Report &r, const std::string &id, Outcome &o)
{
  const auto *c = r.find(id);
  if (!c)
    o.require(false, r.scenario + ": missing " + id);
  else if (c->skipped)
  {
    o.require(false, r.scenario + ": " + id + " skipped");
    return nullptr;
  }
  return c;
}

// Requires max residual < bound on a check that ran and met its own tolerance.
void below(const Report &r, const std::string &id, double bound, Outcome &o)
{
  const auto *c = get(r, id, o);
  if (!c)
    return;
  std::ostringstream s;
  s << r.scenario << ": " << id << " = " << c->max_residual << " (need < " << bound << ")";
  o.require(std::isfinite(c->max_residual) && c->max_residual < bound, s.str());
}

std::string sci(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Suite
{
  kv::runner::Options opt;
  Report ex1;
  std::vector<Report> ex2; // pi/6, pi/4, pi/3
  Report cr, perturbed;
  double ex1_seconds = 0.0;

  Suite()
  {
    auto t0 = Clock::now();
    ex1 = kv::runner::run(kv::scenarios::builtin("example1"), opt);
    ex1_seconds = seconds_since(t0);
    for (double t : {std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 3})
      ex2.push_back(kv::runner::run(kv::scenarios::builtin("example2", t), opt));
    cr = kv::runner::run(kv::scenarios::builtin("example2_cr"), opt);
    perturbed = kv::runner::run(kv::scenarios::builtin("example2_perturbed"), opt);
  }
};

void ac1(const Suite &s, Outcome &o)
{
  const Report &r = s.ex1;
  const double c = 3.0 / 17.0;
  o.require(r.classification && r.classification->kind == "proper-semi-slant", "classification");
  const auto *k = get(r, "slant_constancy", o);
  if (k)
  {
    const double worst = std::max(std::abs(std::cos(k->value("theta_min")) - c),
                                  std::abs(std::cos(k->value("theta_max")) - c));
    o.detail << " |cos - 3/17| max " << sci(worst) << ", spread " << sci(r.classification->spread) << ", "
             << r.samples << " points, " << k->samples << " directions total";
    o.require(worst < 1e-9, "cos deviation");
    o.require(r.classification->spread < 1e-9, "spread");
    o.require(r.samples >= 50, "point count");
    o.require(k->samples >= static_cast<std::size_t>(20 * r.samples), "directions per point");
  }
  o.detail << ", runtime " << sci(s.ex1_seconds) << " s";
  o.require(s.ex1_seconds < 1.0, "runtime");
}

void ac2(const Suite &s, Outcome &o)
{
  below(s.ex1, "invariant_distribution", 1e-10, o);
  if (const auto *c = s.ex1.find("invariant_distribution"))
    o.detail << " max |FX| " << sci(c->max_residual);
}

void ac3(const Suite &s, Outcome &o)
{
  for (const auto &r : s.ex2)
  {
    below(r, "kenmotsu_nabla_phi", 1e-8, o);
    below(r, "kenmotsu_nabla_xi", 1e-8, o);
    o.require(r.samples >= 100, "point count");
  }
  const auto *k = get(s.ex1, "kenmotsu_nabla_phi", o);
  if (k)
  {
    o.detail << " example2 max " << sci(s.ex2[1].find("kenmotsu_nabla_phi")->max_residual) << "; example1 "
             << sci(k->max_residual) << ", " << k->note;
    o.require(!k->pass && k->max_residual >= 0.5, "example1 negative control");
    o.require(k->note.find("basis pair") != std::string::npos, "basis pair reported");
  }
}

void ac4(const Suite &s, Outcome &o)
{
  for (const Report *r : {&s.ex1, &s.ex2[1]})
  {
    below(*r, "almost_contact", 1e-10, o);
    o.require(r->samples >= 100, "point count");
    o.detail << " " << r->scenario << " " << sci(r->find("almost_contact")->max_residual);
  }
}

void ac5(const Suite &s, Outcome &o)
{
  double worst = 0.0;
  for (const auto &name : kv::scenarios::builtin_names())
  {
    const Report r = kv::runner::run(kv::scenarios::builtin(name), s.opt);
    for (const char *id : {"weingarten_duality", "h_symmetry", "h_normality"})
    {
      below(r, id, 1e-10, o);
      if (const auto *c = r.find(id))
        worst = std::max(worst, c->max_residual);
    }
    if (const auto *c = r.find("weingarten_duality"))
      o.require(c->samples >= 20 * 50, name + ": triple count");
  }
  o.detail << " worst " << sci(worst) << " over " << kv::scenarios::builtin_names().size() << " scenarios";
}

void ac6(const Suite &s, Outcome &o)
{
  const Report r = kv::crosscheck::finite_difference_report(42, 20, s.opt.tol_scale);
  below(r, "fd_christoffel", 1e-5, o);
  below(r, "fd_second_fundamental_form", 1e-5, o);
  for (const char *id : {"fd_christoffel", "fd_second_fundamental_form"})
    if (const auto *c = r.find(id))
      o.detail << " " << id << " " << sci(c->max_residual);
}

void ac7(const Suite &s, Outcome &o)
{
  std::vector<const Report *> all{&s.ex1, &s.cr};
  for (const auto &r : s.ex2)
    all.push_back(&r);
  double worst = 0.0;
  for (const Report *r : all)
    for (const char *id : {"slant_lambda_fit", "slant_tangential_norm", "slant_normal_norm"})
    {
      below(*r, id, 1e-9, o);
      if (const auto *c = r->find(id))
        worst = std::max(worst, c->max_residual);
    }
  if (const auto *c = s.ex1.find("slant_lambda_fit"))
  {
    o.detail << " example1 lambda " << c->value("lambda_mean") << " vs 9/289 = " << 9.0 / 289.0 << ";";
    o.require(std::abs(c->value("lambda_mean") - 9.0 / 289.0) < 1e-9, "example1 lambda");
  }
  o.detail << " worst residual " << sci(worst);
}

void ac8(const Suite &s, Outcome &o)
{
  double worst = 0.0;
  for (const auto &r : s.ex2)
    for (const char *id :
         {"invariant_leaf_connection_identity", "slant_leaf_connection_identity", "slant_bracket_identity",
          "mixed_h_identity_base", "mixed_h_identity_phix", "mixed_h_identity_pz", "mixed_h_identity_pw",
          "mixed_h_identity_pz_pw", "mixed_h_antisymmetry", "invariant_h_orthogonal_fd"})
    {
      below(r, id, 1e-8, o);
      if (const auto *c = r.find(id))
      {
        worst = std::max(worst, c->max_residual);
        o.require(c->samples >= 50, std::string(id) + " tuple count");
      }
    }
  o.detail << " worst " << sci(worst);
}

void ac9(const Suite &s, Outcome &o)
{
  double worst = 0.0;
  for (const auto &r : s.ex2)
  {
    below(r, "warp_characterization", 1e-8, o);
    below(r, "warp_characterization_slant_gradient", 1e-10, o);
    if (const auto *c = r.find("warp_characterization"))
      worst = std::max(worst, c->max_residual);
  }
  const auto *p = get(s.perturbed, "warp_characterization", o);
  if (p)
  {
    o.detail << " forward worst " << sci(worst) << "; perturbed " << sci(p->max_residual);
    o.require(p->max_residual > 1e-3 && !p->pass, "perturbed residual");
    o.require(!s.perturbed.passed, "perturbed verdict");
  }
}

void ac10(const Suite &s, Outcome &o)
{
  double worst_margin = 0.0, worst_rhs = 0.0;
  for (const auto &r : s.ex2)
  {
    below(r, "block_metric_cross", 1e-9, o);
    below(r, "block_metric_quotient", 1e-9, o);
    below(r, "warp_connection", 1e-9, o);
    below(r, "xi_warp_derivative", 1e-9, o);
    below(r, "h_factor2_xi", 1e-10, o);
    if (const auto *g = get(r, "warp_gradient_norm", o))
      o.require(std::abs(g->value("min") - 1.0) < 1e-9 && std::abs(g->value("max") - 1.0) < 1e-9,
                r.scenario + ": gradient norm");
    if (const auto *b = get(r, "h_norm_lower_bound", o))
    {
      const double rhs = std::max(std::abs(b->value("rhs_min")), std::abs(b->value("rhs_max")));
      worst_rhs = std::max(worst_rhs, rhs);
      worst_margin = std::min(worst_margin, b->value("min_margin"));
      o.require(rhs < 1e-8, r.scenario + ": rhs");
      o.require(b->value("min_margin") >= -1e-9, r.scenario + ": margin");
    }
  }
  o.detail << " max |rhs| " << sci(worst_rhs) << ", min margin " << sci(worst_margin);
}

void ac11(const Suite &s, Outcome &o)
{
  below(s.cr, "cr_shape_operator_identity", 1e-8, o);
  if (const auto *b = get(s.cr, "cr_h_norm_lower_bound", o))
  {
    o.detail << " identity " << sci(s.cr.find("cr_shape_operator_identity")->max_residual) << ", min margin "
             << sci(b->value("min_margin"));
    o.require(b->value("min_margin") >= -1e-9, "margin");
  }
}

void ac12(const Suite &, Outcome &o)
{
  const std::string cmd = std::string("\"") + KENVERIFY_CLI_PATH + "\" check-paper";
  const auto t0 = Clock::now();
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe)
  {
    o.require(false, "cannot spawn CLI");
    return;
  }
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe))
    out.append(buf, n);
  const int status = pclose(pipe);
  const double secs = seconds_since(t0);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.detail << " exit " << code << ", " << sci(secs) << " s";
  o.require(code == 0, "exit code");
  o.require(secs < 10.0, "wall time");
  // expected-fail rows are printed as XFAIL
  auto xfail = [&](const std::string &scenario, const std::string &id) {
    const auto at = out.find("scenario " + scenario + " ");
    const auto next = out.find("\nscenario ", at + 1);
    const auto block = out.substr(at, next == std::string::npos ? std::string::npos : next - at);
    return at != std::string::npos && block.find("XFAIL  " + id + " ") != std::string::npos;
  };
  o.require(xfail("example1", "kenmotsu_nabla_phi"), "example1 Kenmotsu control");
  o.require(xfail("example2_perturbed", "warp_characterization"), "perturbed control");
}

} // namespace

int main()
{
  const Suite suite;
  const std::vector<std::pair<std::string, std::function<void(const Suite &, Outcome &)>>> criteria = {
    {"AC1  example1 slant angle arccos(3/17)", ac1},
    {"AC2  example1 invariant distribution", ac2},
    {"AC3  Kenmotsu condition and its negative control", ac3},
    {"AC4  almost contact metric axioms", ac4},
    {"AC5  Gauss-Weingarten duality, h symmetric and normal", ac5},
    {"AC6  jets agree with finite differences", ac6},
    {"AC7  slant subbundle P^2 = -cos^2 identities", ac7},
    {"AC8  connection and mixed h identities", ac8},
    {"AC9  warped product characterization and its negative control", ac9},
    {"AC10 warped product battery and |h|^2 bound", ac10},
    {"AC11 contact CR specialization", ac11},
    {"AC12 check-paper end to end", ac12},
  };
  int failed = 0;
  for (const auto &[label, fn] : criteria)
  {
    Outcome o;
    fn(suite, o);
    std::printf("%s %s:%s\n", o.pass ? "PASS" : "FAIL", label.c_str(), o.detail.str().c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
