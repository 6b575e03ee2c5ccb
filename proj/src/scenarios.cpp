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

#include "scenarios.hpp"

#include "error.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace kv::scenarios {

using json = nlohmann::ordered_json;

namespace {

std::vector<std::string> r9_coords()
{
  return {"x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4", "z"};
}

std::vector<std::string> standard_phi_text()
{
  std::vector<std::string> phi(81, "0");
  for (int j = 0; j < 4; ++j)
  {
    phi[static_cast<std::size_t>((4 + j) * 9 + j)] = "-1";
    phi[static_cast<std::size_t>(j * 9 + 4 + j)] = "1";
  }
  return phi;
}

std::vector<std::string> unit_z_text()
{
  std::vector<std::string> v(9, "0");
  v[8] = "1";
  return v;
}

std::string shortest(double v)
{
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string angle_text(double theta)
{
  for (int k : {2, 3, 4, 6})
    if (theta == std::numbers::pi / k)
      return "pi/" + std::to_string(k);
  return shortest(theta);
}

/// Text form of a scenario before validation.
struct Draft
{
  std::string name;
  std::string description;
  AmbientDef ambient;
  std::vector<std::string> params;
  std::vector<std::string> map;
  std::vector<std::string> d, theta;
  std::string xi;
  bool has_warp = false;
  std::vector<std::string> factor1, factor2;
  std::string warping;
  std::optional<double> slant_theta;
  Sampling sampling;
  std::map<std::string, std::vector<double>> bounds_by_name;
  std::map<std::string, std::vector<double>> ambient_bounds_by_name;
  std::map<std::string, double> tolerances;
  std::optional<Expectation> expect;
};

int index_of(const std::vector<std::string> &v, const std::string &s)
{
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == s)
      return static_cast<int>(i);
  return -1;
}

std::vector<expr::Expr> parse_list(const std::vector<std::string> &texts, const std::string &field,
                                   std::vector<std::string> &violations)
{
  std::vector<expr::Expr> out;
  for (std::size_t i = 0; i < texts.size(); ++i)
  {
    try
    {
      out.push_back(expr::parse(texts[i]));
    }
    catch (const ParseError &e)
    {
      violations.push_back(field + "[" + std::to_string(i) + "]: " + e.what());
      out.push_back(expr::Expr::number(0.0));
    }
  }
  return out;
}

std::vector<int> indices_of(const std::vector<std::string> &names, const std::vector<std::string> &params,
                            const std::string &field, std::vector<std::string> &violations)
{
  std::vector<int> out;
  for (const auto &n : names)
  {
    const int i = index_of(params, n);
    if (i < 0)
      violations.push_back(field + ": unknown parameter '" + n + "'");
    else
      out.push_back(i);
  }
  return out;
}

std::vector<std::string> texts_of(const std::vector<expr::Expr> &exprs)
{
  std::vector<std::string> out;
  for (const auto &e : exprs)
    out.push_back(e.to_string());
  return out;
}

Scenario finalize(Draft d)
{
  std::vector<std::string> violations;
  Scenario s;
  s.name = d.name;
  s.description = d.description;
  if (d.name.empty())
    violations.push_back("name: must be a non-empty string");

  // ambient
  try
  {
    if (!d.ambient.builtin.empty())
    {
      const auto names = manifold::builtin_ambient_names();
      if (std::find(names.begin(), names.end(), d.ambient.builtin) == names.end())
        violations.push_back("ambient: unknown builtin '" + d.ambient.builtin + "'");
      else
        s.ambient = manifold::builtin_ambient(d.ambient.builtin);
    }
    else
    {
      std::vector<std::string> local;
      auto phi = parse_list(d.ambient.phi, "ambient.phi", local);
      auto xi = parse_list(d.ambient.xi, "ambient.xi", local);
      auto eta = parse_list(d.ambient.eta, "ambient.eta", local);
      auto metric = parse_list(d.ambient.metric, "ambient.metric", local);
      if (local.empty())
      {
        s.ambient = manifold::AmbientStructure::create(d.ambient.name.empty() ? d.name + "_ambient" : d.ambient.name,
                                                       d.ambient.coordinates, phi, xi, eta, metric);
        d.ambient.phi = texts_of(phi);
        d.ambient.xi = texts_of(xi);
        d.ambient.eta = texts_of(eta);
        d.ambient.metric = texts_of(metric);
        d.ambient.name = s.ambient->name();
      }
      violations.insert(violations.end(), local.begin(), local.end());
    }
  }
  catch (const ValidationError &e)
  {
    for (const auto &v : e.violations())
      violations.push_back("ambient: " + v);
  }
  s.ambient_def = d.ambient;

  // immersion
  std::vector<std::string> local;
  auto target = parse_list(d.map, "immersion.map", local);
  violations.insert(violations.end(), local.begin(), local.end());
  if (s.ambient && local.empty())
  {
    try
    {
      s.immersion = immersion::Immersion::create(d.params, target, s.ambient);
    }
    catch (const ValidationError &e)
    {
      for (const auto &v : e.violations())
        violations.push_back("immersion: " + v);
    }
  }
  const auto &params = d.params;
  const int n = static_cast<int>(params.size());

  // split
  s.split.d = indices_of(d.d, params, "split.D", violations);
  s.split.theta = indices_of(d.theta, params, "split.D_theta", violations);
  if (d.xi.empty())
    violations.push_back("split.xi: missing");
  else
  {
    s.split.xi = index_of(params, d.xi);
    if (s.split.xi < 0)
      violations.push_back("split.xi: unknown parameter '" + d.xi + "'");
  }
  {
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    for (int i : s.split.d)
      ++count[static_cast<std::size_t>(i)];
    for (int i : s.split.theta)
      ++count[static_cast<std::size_t>(i)];
    if (s.split.xi >= 0)
      ++count[static_cast<std::size_t>(s.split.xi)];
    for (int i = 0; i < n; ++i)
      if (count[static_cast<std::size_t>(i)] != 1)
        violations.push_back("split: parameter '" + params[static_cast<std::size_t>(i)] + "' appears " +
                             std::to_string(count[static_cast<std::size_t>(i)]) +
                             " times; D, D_theta and xi must partition the parameters");
  }

  // warp
  if (d.has_warp)
  {
    warped::WarpSpec w;
    w.factor1 = indices_of(d.factor1, params, "warp.factor1", violations);
    w.factor2 = indices_of(d.factor2, params, "warp.factor2", violations);
    w.slant_theta = d.slant_theta;
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    for (int i : w.factor1)
      ++count[static_cast<std::size_t>(i)];
    for (int i : w.factor2)
      ++count[static_cast<std::size_t>(i)];
    for (int i = 0; i < n; ++i)
      if (count[static_cast<std::size_t>(i)] != 1)
        violations.push_back("warp: parameter '" + params[static_cast<std::size_t>(i)] +
                             "' must belong to exactly one factor");
    try
    {
      w.warping = expr::parse(d.warping);
      for (const auto &v : w.warping.variables())
      {
        if (index_of(d.factor2, v) >= 0)
          violations.push_back("warp.warping: references second-factor parameter '" + v +
                               "'; the warping function must depend on the first factor only");
        else if (index_of(params, v) < 0)
          violations.push_back("warp.warping: unknown parameter '" + v + "'");
      }
    }
    catch (const ParseError &e)
    {
      violations.push_back(std::string("warp.warping: ") + e.what());
    }
    if (d.slant_theta && !(*d.slant_theta >= 0.0 && *d.slant_theta <= std::numbers::pi / 2))
      violations.push_back("warp.slant_theta: must lie in [0, pi/2]");
    s.warp = w;
  }

  // sampling
  s.sampling = d.sampling;
  if (s.sampling.mode == Sampling::Mode::SeededBox)
  {
    if (s.sampling.count <= 0)
      violations.push_back("sampling.count: must be positive");
    s.sampling.bounds.assign(static_cast<std::size_t>(n), {-1.0, 1.0});
    for (const auto &[name, b] : d.bounds_by_name)
    {
      const int i = index_of(params, name);
      if (i < 0)
        violations.push_back("sampling.bounds: unknown parameter '" + name + "'");
      else if (b.size() != 2 || !(b[0] < b[1]) || !std::isfinite(b[0]) || !std::isfinite(b[1]))
        violations.push_back("sampling.bounds." + name + ": expected [low, high] with low < high");
      else
        s.sampling.bounds[static_cast<std::size_t>(i)] = {b[0], b[1]};
    }
    for (int i = 0; i < n; ++i)
      if (!d.bounds_by_name.count(params[static_cast<std::size_t>(i)]))
        violations.push_back("sampling.bounds: missing parameter '" + params[static_cast<std::size_t>(i)] + "'");
  }
  else
  {
    if (s.sampling.points.empty())
      violations.push_back("sampling.points: fixed-list mode needs at least one point");
    for (std::size_t k = 0; k < s.sampling.points.size(); ++k)
    {
      const auto &p = s.sampling.points[k];
      if (static_cast<int>(p.size()) != n)
        violations.push_back("sampling.points[" + std::to_string(k) + "]: has " + std::to_string(p.size()) +
                             " coordinates, expected " + std::to_string(n));
      for (double v : p)
        if (!std::isfinite(v))
          violations.push_back("sampling.points[" + std::to_string(k) + "]: non-finite coordinate");
    }
    s.sampling.count = static_cast<int>(s.sampling.points.size());
  }
  if (s.ambient)
  {
    const auto &coords = s.ambient->coords();
    s.sampling.ambient_bounds.clear();
    if (!d.ambient_bounds_by_name.empty())
    {
      s.sampling.ambient_bounds.assign(coords.size(), {-1.0, 1.0});
      for (const auto &[name, b] : d.ambient_bounds_by_name)
      {
        const int i = index_of(coords, name);
        if (i < 0)
          violations.push_back("sampling.ambient_bounds: unknown coordinate '" + name + "'");
        else if (b.size() != 2 || !(b[0] < b[1]))
          violations.push_back("sampling.ambient_bounds." + name + ": expected [low, high] with low < high");
        else
          s.sampling.ambient_bounds[static_cast<std::size_t>(i)] = {b[0], b[1]};
      }
    }
  }

  for (const auto &[id, v] : d.tolerances)
  {
    if (!is_known_check(id))
      violations.push_back("tolerances: unknown check '" + id + "'");
    else if (!(v >= 0.0) || !std::isfinite(v))
      violations.push_back("tolerances." + id + ": must be a finite non-negative number");
  }
  s.tolerances = d.tolerances;

  if (d.expect)
    for (const auto &id : d.expect->fail)
      if (!is_known_check(id))
        violations.push_back("expect.fail: unknown check '" + id + "'");
  s.expect = d.expect;

  if (!violations.empty())
    throw ValidationError(std::move(violations));
  return s;
}

Draft example2_draft(const std::string &name, std::optional<double> theta0, const std::string &warp_theta_text)
{
  Draft d;
  d.name = name;
  d.ambient.builtin = "example2_kenmotsu";
  d.params = {"u1", "u2", "u3", "u4", "z"};
  if (theta0)
  {
    const std::string t = angle_text(*theta0);
    d.map = {"u1", "0", "u3", "0", "u2", "0", "u4*cos(" + t + ")", "u4*sin(" + t + ")", "z"};
  }
  else
    d.map = {"u1", "0", "u3", "0", "u2", "0", "0", "u4", "z"};
  d.d = {"u1", "u2"};
  d.theta = {"u3", "u4"};
  d.xi = "z";
  d.has_warp = true;
  d.factor1 = {"u1", "u2", "z"};
  d.factor2 = {"u3", "u4"};
  d.warping = "exp(z)";
  d.slant_theta = expr::eval(expr::parse(warp_theta_text), {});
  d.sampling.count = 100;
  d.sampling.seed = 42;
  d.bounds_by_name = {{"u1", {-1, 1}}, {"u2", {-1, 1}}, {"u3", {-1, 1}}, {"u4", {-1, 1}}, {"z", {-0.5, 0.5}}};
  return d;
}

// JSON helpers collecting violations instead of throwing on the first one

std::vector<std::string> string_array(const json &j, const std::string &field, std::vector<std::string> &violations)
{
  std::vector<std::string> out;
  if (!j.is_array())
  {
    violations.push_back(field + ": expected an array of strings");
    return out;
  }
  for (std::size_t i = 0; i < j.size(); ++i)
  {
    if (j[i].is_string())
      out.push_back(j[i].get<std::string>());
    else if (j[i].is_number())
      out.push_back(shortest(j[i].get<double>()));
    else
      violations.push_back(field + "[" + std::to_string(i) + "]: expected a string");
  }
  return out;
}

/// Flat row-major list or list of rows.
std::vector<std::string> matrix(const json &j, const std::string &field, std::vector<std::string> &violations)
{
  if (j.is_array() && !j.empty() && j[0].is_array())
  {
    std::vector<std::string> out;
    for (std::size_t r = 0; r < j.size(); ++r)
    {
      auto row = string_array(j[r], field + "[" + std::to_string(r) + "]", violations);
      if (row.size() != j.size())
        violations.push_back(field + "[" + std::to_string(r) + "]: row has " + std::to_string(row.size()) +
                             " entries, expected " + std::to_string(j.size()));
      out.insert(out.end(), row.begin(), row.end());
    }
    return out;
  }
  return string_array(j, field, violations);
}

std::map<std::string, std::vector<double>> bounds_object(const json &j, const std::string &field,
                                                         std::vector<std::string> &violations)
{
  std::map<std::string, std::vector<double>> out;
  if (!j.is_object())
  {
    violations.push_back(field + ": expected an object of [low, high] pairs");
    return out;
  }
  for (const auto &[k, v] : j.items())
  {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    {
      violations.push_back(field + "." + k + ": expected [low, high]");
      continue;
    }
    out[k] = {v[0].get<double>(), v[1].get<double>()};
  }
  return out;
}

double angle_value(const json &j, const std::string &field, std::vector<std::string> &violations)
{
  if (j.is_number())
    return j.get<double>();
  if (j.is_string())
  {
    try
    {
      return expr::eval(expr::parse(j.get<std::string>()), {});
    }
    catch (const Error &e)
    {
      violations.push_back(field + ": " + e.what());
      return 0.0;
    }
  }
  violations.push_back(field + ": expected a number or a constant expression");
  return 0.0;
}

void require_object(const json &j, const std::string &field, const std::set<std::string> &allowed,
                    std::vector<std::string> &violations)
{
  if (!j.is_object())
  {
    violations.push_back(field + ": expected an object");
    return;
  }
  for (const auto &[k, v] : j.items())
    if (!allowed.count(k))
      violations.push_back(field + ": unknown key '" + k + "'");
}

std::string string_field(const json &j, const std::string &key, const std::string &field,
                         std::vector<std::string> &violations, bool required = true)
{
  if (!j.is_object() || !j.contains(key))
  {
    if (required)
      violations.push_back(field + "." + key + ": missing");
    return {};
  }
  if (!j[key].is_string())
  {
    violations.push_back(field + "." + key + ": expected a string");
    return {};
  }
  return j[key].get<std::string>();
}

json bounds_json(const std::vector<std::pair<double, double>> &b, const std::vector<std::string> &names)
{
  json o = json::object();
  for (std::size_t i = 0; i < b.size() && i < names.size(); ++i)
    o[names[i]] = json::array({b[i].first, b[i].second});
  return o;
}

json rows_json(const std::vector<std::string> &flat, std::size_t dim)
{
  json rows = json::array();
  for (std::size_t r = 0; r < dim; ++r)
  {
    json row = json::array();
    for (std::size_t c = 0; c < dim; ++c)
      row.push_back(flat[r * dim + c]);
    rows.push_back(row);
  }
  return rows;
}

} // namespace

std::vector<std::string> builtin_names()
{
  return {"example1", "example2", "example2_cr", "example2_perturbed", "example2_paper_literal"};
}

Scenario builtin(std::string_view name, std::optional<double> theta0)
{
  if (theta0 && name != "example2")
    throw Error("builtin '" + std::string(name) + "' takes no slant angle");
  if (name == "example1")
  {
    Draft d;
    d.name = "example1";
    d.description = "proper semi-slant submanifold of R^9 with its Euclidean almost contact metric structure";
    d.ambient.builtin = "example1_r9";
    d.params = {"u", "v", "v3", "v4", "z"};
    d.map = {"cos(u+v)", "u-v", "u/2+v", "v3+v4", "sin(u+v)", "v-u", "u+v/2", "v4-v3", "z"};
    d.d = {"v3", "v4"};
    d.theta = {"u", "v"};
    d.xi = "z";
    d.sampling.count = 100;
    d.sampling.seed = 42;
    for (const auto &p : d.params)
      d.bounds_by_name[p] = {-1, 1};
    d.expect = Expectation{{"kenmotsu_nabla_phi", "kenmotsu_nabla_xi"}, true};
    return finalize(d);
  }
  if (name == "example2")
  {
    const double t = theta0.value_or(std::numbers::pi / 4);
    if (!(t > 0.0 && t < std::numbers::pi / 2))
      throw Error("slant angle " + shortest(t) + " outside (0, pi/2)");
    auto d = example2_draft("example2(theta0=" + angle_text(t) + ")", t, angle_text(t));
    d.description = "warped product semi-slant submanifold of the Kenmotsu space dz^2 + e^{2z} sum(dx^2 + dy^2)";
    return finalize(d);
  }
  if (name == "example2_cr")
  {
    auto d = example2_draft("example2_cr", std::nullopt, "pi/2");
    d.description = "contact CR warped product: the anti-invariant variant of example2";
    return finalize(d);
  }
  if (name == "example2_perturbed")
  {
    auto d = example2_draft("example2_perturbed", std::numbers::pi / 4, "pi/4");
    d.description = "negative control: example2 immersion in an ambient whose (x4, y4) block is scaled by "
                    "1 + sin(x1)/10, which breaks the Kenmotsu condition and the warped block structure";
    d.ambient = AmbientDef{};
    d.ambient.name = "example2_perturbed_ambient";
    d.ambient.coordinates = r9_coords();
    d.ambient.phi = standard_phi_text();
    d.ambient.xi = unit_z_text();
    d.ambient.eta = unit_z_text();
    d.ambient.metric.assign(81, "0");
    for (int i = 0; i < 8; ++i)
      d.ambient.metric[static_cast<std::size_t>(i * 9 + i)] =
        (i == 3 || i == 7) ? "exp(2*z)*(1+0.1*sin(x1))" : "exp(2*z)";
    d.ambient.metric[80] = "1";
    d.expect = Expectation{{"kenmotsu_nabla_phi", "warp_characterization"}, false};
    return finalize(d);
  }
  if (name == "example2_paper_literal")
  {
    auto d = example2_draft("example2_paper_literal", std::numbers::pi / 4, "pi/4");
    d.description = "negative control: example2 immersion in the ambient exactly as printed "
                    "(xi = e^z d/dz, eta = e^z dz, g = e^{2z} times the Euclidean metric)";
    d.ambient.builtin = "example2_paper_literal";
    d.expect = Expectation{{"almost_contact", "kenmotsu_nabla_phi", "kenmotsu_nabla_xi"}, false};
    return finalize(d);
  }
  throw Error("unknown builtin scenario '" + std::string(name) + "'");
}

Scenario load(std::string_view text)
{
  json j;
  try
  {
    j = json::parse(text.begin(), text.end());
  }
  catch (const json::parse_error &e)
  {
    throw ParseError(std::string("malformed scenario document: ") + e.what(), e.byte, "JSON");
  }
  std::vector<std::string> v;
  Draft d;
  require_object(j, "scenario",
                 {"name", "description", "ambient", "immersion", "split", "warp", "sampling", "tolerances", "expect"},
                 v);
  if (!j.is_object())
    throw ValidationError(std::move(v));

  d.name = string_field(j, "name", "scenario", v);
  d.description = string_field(j, "description", "scenario", v, false);

  if (!j.contains("ambient"))
    v.push_back("ambient: missing");
  else if (j["ambient"].is_string())
    d.ambient.builtin = j["ambient"].get<std::string>();
  else
  {
    const auto &a = j["ambient"];
    require_object(a, "ambient", {"name", "coordinates", "phi", "xi", "eta", "metric"}, v);
    if (a.is_object())
    {
      d.ambient.name = string_field(a, "name", "ambient", v, false);
      for (const char *k : {"coordinates", "phi", "xi", "eta", "metric"})
        if (!a.contains(k))
          v.push_back(std::string("ambient.") + k + ": missing");
      if (a.contains("coordinates"))
        d.ambient.coordinates = string_array(a["coordinates"], "ambient.coordinates", v);
      if (a.contains("phi"))
        d.ambient.phi = matrix(a["phi"], "ambient.phi", v);
      if (a.contains("xi"))
        d.ambient.xi = string_array(a["xi"], "ambient.xi", v);
      if (a.contains("eta"))
        d.ambient.eta = string_array(a["eta"], "ambient.eta", v);
      if (a.contains("metric"))
        d.ambient.metric = matrix(a["metric"], "ambient.metric", v);
    }
  }

  if (!j.contains("immersion"))
    v.push_back("immersion: missing");
  else
  {
    const auto &im = j["immersion"];
    require_object(im, "immersion", {"parameters", "map"}, v);
    if (im.is_object())
    {
      if (im.contains("parameters"))
        d.params = string_array(im["parameters"], "immersion.parameters", v);
      else
        v.push_back("immersion.parameters: missing");
      if (im.contains("map"))
        d.map = string_array(im["map"], "immersion.map", v);
      else
        v.push_back("immersion.map: missing");
    }
  }

  if (!j.contains("split"))
    v.push_back("split: missing");
  else
  {
    const auto &sp = j["split"];
    require_object(sp, "split", {"D", "D_theta", "xi"}, v);
    if (sp.is_object())
    {
      if (sp.contains("D"))
        d.d = string_array(sp["D"], "split.D", v);
      if (sp.contains("D_theta"))
        d.theta = string_array(sp["D_theta"], "split.D_theta", v);
      d.xi = string_field(sp, "xi", "split", v);
    }
  }

  if (j.contains("warp") && !j["warp"].is_null())
  {
    const auto &w = j["warp"];
    require_object(w, "warp", {"factor1", "factor2", "warping", "slant_theta"}, v);
    if (w.is_object())
    {
      d.has_warp = true;
      if (w.contains("factor1"))
        d.factor1 = string_array(w["factor1"], "warp.factor1", v);
      else
        v.push_back("warp.factor1: missing");
      if (w.contains("factor2"))
        d.factor2 = string_array(w["factor2"], "warp.factor2", v);
      else
        v.push_back("warp.factor2: missing");
      d.warping = string_field(w, "warping", "warp", v);
      if (w.contains("slant_theta") && !w["slant_theta"].is_null())
        d.slant_theta = angle_value(w["slant_theta"], "warp.slant_theta", v);
    }
  }

  if (!j.contains("sampling"))
    v.push_back("sampling: missing");
  else
  {
    const auto &sm = j["sampling"];
    require_object(sm, "sampling", {"mode", "bounds", "points", "count", "seed", "ambient_bounds"}, v);
    if (sm.is_object())
    {
      const std::string mode = string_field(sm, "mode", "sampling", v);
      if (mode == "fixed-list")
      {
        d.sampling.mode = Sampling::Mode::FixedList;
        if (!sm.contains("points") || !sm["points"].is_array())
          v.push_back("sampling.points: expected an array of points");
        else
          for (const auto &p : sm["points"])
          {
            std::vector<double> pt;
            if (p.is_array())
              for (const auto &c : p)
                pt.push_back(c.is_number() ? c.get<double>() : std::nan(""));
            d.sampling.points.push_back(pt);
          }
      }
      else if (mode == "seeded-box")
      {
        d.sampling.mode = Sampling::Mode::SeededBox;
        if (sm.contains("bounds"))
          d.bounds_by_name = bounds_object(sm["bounds"], "sampling.bounds", v);
        else
          v.push_back("sampling.bounds: missing");
        if (sm.contains("count"))
        {
          if (sm["count"].is_number_integer())
            d.sampling.count = sm["count"].get<int>();
          else
            v.push_back("sampling.count: expected an integer");
        }
      }
      else if (!mode.empty())
        v.push_back("sampling.mode: expected 'seeded-box' or 'fixed-list', got '" + mode + "'");
      if (sm.contains("seed"))
      {
        if (sm["seed"].is_number_unsigned())
          d.sampling.seed = sm["seed"].get<std::uint64_t>();
        else
          v.push_back("sampling.seed: expected a non-negative integer");
      }
      if (sm.contains("ambient_bounds"))
        d.ambient_bounds_by_name = bounds_object(sm["ambient_bounds"], "sampling.ambient_bounds", v);
    }
  }

  if (j.contains("tolerances"))
  {
    const auto &t = j["tolerances"];
    if (!t.is_object())
      v.push_back("tolerances: expected an object of check id to number");
    else
      for (const auto &[k, val] : t.items())
      {
        if (val.is_number())
          d.tolerances[k] = val.get<double>();
        else
          v.push_back("tolerances." + k + ": expected a number");
      }
  }

  if (j.contains("expect"))
  {
    const auto &e = j["expect"];
    require_object(e, "expect", {"fail", "others"}, v);
    if (e.is_object())
    {
      Expectation ex;
      if (e.contains("fail"))
        ex.fail = string_array(e["fail"], "expect.fail", v);
      if (e.contains("others"))
      {
        const std::string o = e["others"].is_string() ? e["others"].get<std::string>() : "";
        if (o == "pass")
          ex.others_pass = true;
        else if (o == "any")
          ex.others_pass = false;
        else
          v.push_back("expect.others: expected 'pass' or 'any'");
      }
      d.expect = ex;
    }
  }

  if (!v.empty())
  {
    // still run the semantic checks so every violation is reported at once
    try
    {
      finalize(d);
    }
    catch (const ValidationError &e)
    {
      for (const auto &x : e.violations())
        if (std::find(v.begin(), v.end(), x) == v.end())
          v.push_back(x);
    }
    catch (const Error &)
    {
    }
    throw ValidationError(std::move(v));
  }
  return finalize(d);
}

std::string serialize(const Scenario &s)
{
  json j;
  j["name"] = s.name;
  if (!s.description.empty())
    j["description"] = s.description;
  if (!s.ambient_def.builtin.empty())
    j["ambient"] = s.ambient_def.builtin;
  else
  {
    const auto &a = s.ambient_def;
    const std::size_t dim = a.coordinates.size();
    json o;
    o["name"] = a.name;
    o["coordinates"] = a.coordinates;
    o["phi"] = rows_json(a.phi, dim);
    o["xi"] = a.xi;
    o["eta"] = a.eta;
    o["metric"] = rows_json(a.metric, dim);
    j["ambient"] = o;
  }
  const auto &params = s.immersion->params();
  j["immersion"] = {{"parameters", params}, {"map", texts_of(s.immersion->target())}};
  auto names = [&](const std::vector<int> &idx) {
    std::vector<std::string> out;
    for (int i : idx)
      out.push_back(params[static_cast<std::size_t>(i)]);
    return out;
  };
  j["split"] = {{"D", names(s.split.d)},
                {"D_theta", names(s.split.theta)},
                {"xi", params[static_cast<std::size_t>(s.split.xi)]}};
  if (s.warp)
  {
    json w;
    w["factor1"] = names(s.warp->factor1);
    w["factor2"] = names(s.warp->factor2);
    w["warping"] = s.warp->warping.to_string();
    if (s.warp->slant_theta)
      w["slant_theta"] = *s.warp->slant_theta;
    j["warp"] = w;
  }
  json sm;
  if (s.sampling.mode == Sampling::Mode::SeededBox)
  {
    sm["mode"] = "seeded-box";
    sm["bounds"] = bounds_json(s.sampling.bounds, params);
    sm["count"] = s.sampling.count;
  }
  else
  {
    sm["mode"] = "fixed-list";
    sm["points"] = s.sampling.points;
  }
  sm["seed"] = s.sampling.seed;
  if (!s.sampling.ambient_bounds.empty())
    sm["ambient_bounds"] = bounds_json(s.sampling.ambient_bounds, s.ambient->coords());
  j["sampling"] = sm;
  if (!s.tolerances.empty())
  {
    json t = json::object();
    for (const auto &[k, v] : s.tolerances)
      t[k] = v;
    j["tolerances"] = t;
  }
  if (s.expect)
    j["expect"] = {{"fail", s.expect->fail}, {"others", s.expect->others_pass ? "pass" : "any"}};
  return j.dump(2) + "\n";
}

std::vector<Vec> parameter_points(const Scenario &s, std::optional<std::uint64_t> seed, std::optional<int> count)
{
  std::vector<Vec> out;
  const int n = s.immersion->n();
  if (s.sampling.mode == Sampling::Mode::FixedList)
  {
    for (const auto &p : s.sampling.points)
      out.push_back(Eigen::Map<const Vec>(p.data(), n));
    if (count && *count > 0 && static_cast<std::size_t>(*count) < out.size())
      out.resize(static_cast<std::size_t>(*count));
    return out;
  }
  Rng rng(seed.value_or(s.sampling.seed));
  const int m = count.value_or(s.sampling.count);
  for (int k = 0; k < m; ++k)
  {
    Vec u(n);
    for (int i = 0; i < n; ++i)
    {
      const auto [lo, hi] = s.sampling.bounds[static_cast<std::size_t>(i)];
      u(i) = std::uniform_real_distribution<double>(lo, hi)(rng);
    }
    out.push_back(u);
  }
  return out;
}

std::vector<Vec> ambient_points(const Scenario &s, std::optional<std::uint64_t> seed, std::optional<int> count)
{
  const int dim = s.ambient->dim();
  Rng rng(stream_seed(seed.value_or(s.sampling.seed), "ambient"));
  const int m = count.value_or(s.sampling.count);
  std::vector<Vec> out;
  for (int k = 0; k < m; ++k)
  {
    Vec p(dim);
    for (int i = 0; i < dim; ++i)
    {
      const auto [lo, hi] = s.sampling.ambient_bounds.empty() ? std::pair<double, double>{-1.0, 1.0}
                                                              : s.sampling.ambient_bounds[static_cast<std::size_t>(i)];
      p(i) = std::uniform_real_distribution<double>(lo, hi)(rng);
    }
    out.push_back(p);
  }
  return out;
}

} // namespace kv::scenarios
