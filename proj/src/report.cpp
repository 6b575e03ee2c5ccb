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

#include "report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace kv::report {

using json = nlohmann::ordered_json;

const CheckRecord *Report::find(std::string_view id) const
{
  for (const auto &c : checks)
    if (c.id == id)
      return &c;
  return nullptr;
}

void finalize_verdict(Report &r, const std::optional<scenarios::Expectation> &expect)
{
  r.passed = true;
  for (const auto &c : r.checks)
    if (!c.diagnostic && !c.skipped && !c.pass)
      r.passed = false;

  r.expectation_notes.clear();
  if (!expect)
  {
    r.expectations_met = r.passed;
    if (!r.passed)
      r.expectation_notes.push_back("no expectations declared and some checks failed");
    return;
  }
  bool ok = true;
  for (const auto &id : expect->fail)
  {
    bool found = false;
    for (auto &c : r.checks)
      if (c.id == id)
      {
        found = true;
        c.expected_fail = true;
        if (c.skipped)
        {
          ok = false;
          r.expectation_notes.push_back("expected failure of '" + id + "' but the check was skipped");
        }
        else if (c.pass)
        {
          ok = false;
          r.expectation_notes.push_back("expected failure of '" + id + "' but it passed");
        }
      }
    if (!found)
    {
      ok = false;
      r.expectation_notes.push_back("expected failure of '" + id + "' but the check did not run");
    }
  }
  if (expect->others_pass)
    for (const auto &c : r.checks)
      if (!c.expected_fail && !c.diagnostic && !c.skipped && !c.pass)
      {
        ok = false;
        r.expectation_notes.push_back("unexpected failure of '" + c.id + "'");
      }
  r.expectations_met = ok;
}

namespace {

json number(double v)
{
  if (std::isfinite(v))
    return v;
  return nullptr;
}

json check_json(const CheckRecord &c)
{
  json j;
  j["id"] = c.id;
  j["anchor"] = c.anchor;
  j["group"] = c.group;
  j["max_residual"] = number(c.max_residual);
  j["mean_residual"] = number(c.mean_residual);
  j["tolerance"] = number(c.tolerance);
  j["pass"] = c.pass;
  j["diagnostic"] = c.diagnostic;
  j["skipped"] = c.skipped;
  j["expected_fail"] = c.expected_fail;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  if (!c.note.empty())
    j["note"] = c.note;
  if (!c.worst_point.empty())
    j["worst_point"] = c.worst_point;
  if (!c.values.empty())
  {
    json v = json::object();
    for (const auto &[k, x] : c.values)
      v[k] = number(x);
    j["values"] = v;
  }
  return j;
}

json report_json(const Report &r)
{
  json j;
  j["scenario"] = r.scenario;
  if (!r.description.empty())
    j["description"] = r.description;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["tol_scale"] = r.tol_scale;
  if (r.classification)
  {
    json c;
    c["kind"] = r.classification->kind;
    c["slant_angle"] = r.classification->slant_angle ? number(*r.classification->slant_angle) : json(nullptr);
    c["cos_slant_angle"] =
      r.classification->slant_angle ? number(std::cos(*r.classification->slant_angle)) : json(nullptr);
    c["spread"] = number(r.classification->spread);
    j["classification"] = c;
  }
  else
    j["classification"] = nullptr;
  if (r.inequality)
  {
    json q;
    q["lhs"] = number(r.inequality->lhs);
    q["rhs"] = number(r.inequality->rhs);
    q["min_margin"] = number(r.inequality->min_margin);
    q["max_lhs"] = number(r.inequality->max_lhs);
    q["equality_verdict"] = r.inequality->equality_verdict;
    j["inequality"] = q;
  }
  else
    j["inequality"] = nullptr;
  json checks = json::array();
  for (const auto &c : r.checks)
    checks.push_back(check_json(c));
  j["checks"] = checks;
  j["verdict"] = r.passed ? "pass" : "fail";
  j["passed"] = r.passed;
  j["expectations_met"] = r.expectations_met;
  j["expectation_notes"] = r.expectation_notes;
  return j;
}

std::string status(const CheckRecord &c)
{
  if (c.skipped)
    return "SKIP";
  if (c.diagnostic)
    return "DIAG";
  if (c.expected_fail)
    return c.pass ? "XPASS" : "XFAIL";
  return c.pass ? "PASS" : "FAIL";
}

std::string fmt(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

} // namespace

std::string to_json(const Report &r) { return report_json(r).dump(2) + "\n"; }

std::string to_table(const Report &r)
{
  std::ostringstream os;
  os << "scenario " << r.scenario << "  (seed " << r.seed << ", " << r.samples << " points, tol-scale " << r.tol_scale
     << ")\n";
  if (r.classification)
  {
    os << "  classification: " << r.classification->kind;
    if (r.classification->slant_angle)
      os << ", slant angle " << *r.classification->slant_angle << " rad (cos " << std::cos(*r.classification->slant_angle)
         << "), spread " << fmt(r.classification->spread);
    os << "\n";
  }
  if (r.inequality)
    os << "  |h|^2 bound: lhs " << fmt(r.inequality->lhs) << ", rhs " << fmt(r.inequality->rhs) << ", min margin "
       << fmt(r.inequality->min_margin) << ", " << r.inequality->equality_verdict << "\n";
  char line[512];
  std::snprintf(line, sizeof line, "  %-6s %-38s %-11s %-11s %7s  %s\n", "status", "check", "max", "tol", "samples",
                "identity");
  os << line;
  for (const auto &c : r.checks)
  {
    std::snprintf(line, sizeof line, "  %-6s %-38s %-11s %-11s %7zu  %s\n", status(c).c_str(), c.id.c_str(),
                  c.skipped ? "-" : fmt(c.max_residual).c_str(), c.skipped ? "-" : fmt(c.tolerance).c_str(),
                  c.samples, c.anchor.c_str());
    os << line;
    if (!c.note.empty() && (c.skipped || !c.pass || c.expected_fail))
      os << "         " << c.note << "\n";
  }
  os << "  verdict: " << (r.passed ? "pass" : "fail")
     << "; expectations " << (r.expectations_met ? "met" : "NOT met") << "\n";
  for (const auto &n : r.expectation_notes)
    os << "    " << n << "\n";
  return os.str();
}

std::string to_json(const PaperReport &r)
{
  json j;
  json reps = json::array();
  for (const auto &x : r.reports)
    reps.push_back(report_json(x));
  j["reports"] = reps;
  j["expectations_met"] = r.expectations_met;
  return j.dump(2) + "\n";
}

std::string to_table(const PaperReport &r)
{
  std::ostringstream os;
  for (const auto &x : r.reports)
    os << to_table(x) << "\n";
  os << "summary:\n";
  for (const auto &x : r.reports)
    os << "  " << (x.expectations_met ? "ok  " : "BAD ") << x.scenario << " (verdict " << (x.passed ? "pass" : "fail")
       << ")\n";
  os << "all expectations " << (r.expectations_met ? "met" : "NOT met") << "\n";
  return os.str();
}

} // namespace kv::report
