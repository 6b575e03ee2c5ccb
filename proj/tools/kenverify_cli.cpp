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

#include <kenverify/kenverify.h>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>
#include <string>

namespace {

constexpr int exit_pass = 0;
constexpr int exit_verification = 1;
constexpr int exit_usage = 2;

// Accepts a plain number or a multiple of pi such as "pi/3", "2*pi/5", "0.25pi".
std::optional<double> parse_angle(const std::string &text)
{
  static const std::regex pi_form(R"(\s*(?:([0-9.eE+-]+)\s*\*?\s*)?pi\s*(?:/\s*([0-9.eE+-]+))?\s*)");
  std::smatch m;
  if (std::regex_match(text, m, pi_form))
  {
    try
    {
      const double num = m[1].matched ? std::stod(m[1].str()) : 1.0;
      const double den = m[2].matched ? std::stod(m[2].str()) : 1.0;
      return num * std::numbers::pi / den;
    }
    catch (const std::exception &)
    {
      return std::nullopt;
    }
  }
  try
  {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size())
      return v;
  }
  catch (const std::exception &)
  {
  }
  return std::nullopt;
}

struct Flags
{
  std::string report_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  double tol_scale = 1.0;
};

void add_flags(CLI::App *cmd, Flags &f)
{
  cmd->add_option("--report", f.report_path, "write the machine-readable report (JSON) to PATH");
  cmd->add_option("--seed", f.seed, "override the sampling seed");
  cmd->add_option("--samples", f.samples, "override the number of sample points")->check(CLI::PositiveNumber);
  cmd->add_option("--tol-scale", f.tol_scale, "multiply every scaled tolerance by X")->check(CLI::PositiveNumber);
}

int error_exit(kv_status s)
{
  std::cerr << "error: " << kv_status_string(s);
  const std::string detail = kv_last_error();
  if (!detail.empty())
    std::cerr << ": " << detail;
  std::cerr << "\n";
  return s == KV_ERR_INTERNAL || s == KV_ERR_DOMAIN || s == KV_ERR_GEOMETRY ? exit_verification : exit_usage;
}

// Prints the table, writes the JSON document if requested and frees the report.
int finish(kv_report *rep, const Flags &f)
{
  char *text = nullptr;
  kv_status s = kv_report_table(rep, &text);
  if (s != KV_OK)
  {
    kv_report_free(rep);
    return error_exit(s);
  }
  std::cout << text;
  kv_string_free(text);
  if (!f.report_path.empty())
  {
    s = kv_report_json(rep, &text);
    if (s != KV_OK)
    {
      kv_report_free(rep);
      return error_exit(s);
    }
    std::ofstream out(f.report_path);
    out << text << "\n";
    kv_string_free(text);
    if (!out)
    {
      std::cerr << "error: cannot write report to '" << f.report_path << "'\n";
      kv_report_free(rep);
      return exit_usage;
    }
  }
  const int met = kv_report_expectations_met(rep);
  kv_report_free(rep);
  return met ? exit_pass : exit_verification;
}

kv_options options_from(const Flags &f)
{
  kv_options o;
  kv_options_init(&o);
  if (f.seed)
  {
    o.has_seed = 1;
    o.seed = *f.seed;
  }
  if (f.samples)
    o.samples = *f.samples;
  o.tol_scale = f.tol_scale;
  return o;
}

int run_scenario(kv_scenario *sc, const Flags &f)
{
  const kv_options o = options_from(f);
  kv_report *rep = nullptr;
  const kv_status s = kv_run(sc, &o, &rep);
  kv_scenario_free(sc);
  if (s != KV_OK)
    return error_exit(s);
  return finish(rep, f);
}

std::string builtin_list()
{
  char *names = nullptr;
  if (kv_builtin_names(&names) != KV_OK)
    return {};
  std::string all = names;
  kv_string_free(names);
  return all;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Numerical verification of semi-slant submanifolds and warped products in Kenmotsu manifolds"};
  app.require_subcommand(1);

  Flags run_flags, builtin_flags, paper_flags;
  std::string file, name, angle;

  auto *run = app.add_subcommand("run", "verify a scenario document");
  run->add_option("scenario-file", file, "scenario document (JSON)")->required();
  add_flags(run, run_flags);

  auto *bi = app.add_subcommand("builtin", "verify a builtin scenario");
  bi->add_option("name", name, "builtin scenario name")->required();
  bi->add_option("theta0", angle, "slant angle for the example2 family, e.g. pi/3 or 0.7");
  add_flags(bi, builtin_flags);
  bi->footer("builtins:\n" + builtin_list());

  auto *paper = app.add_subcommand("check-paper", "run every builtin scenario and the finite-difference cross-check");
  add_flags(paper, paper_flags);

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e)
  {
    return app.exit(e);
  }
  catch (const CLI::CallForAllHelp &e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError &e)
  {
    app.exit(e);
    return exit_usage;
  }

  if (*run)
  {
    std::ifstream in(file, std::ios::binary);
    if (!in)
    {
      std::cerr << "error: cannot read '" << file << "'\n";
      return exit_usage;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    kv_scenario *sc = nullptr;
    const kv_status s = kv_scenario_load_json(text.data(), text.size(), &sc);
    if (s != KV_OK)
      return error_exit(s);
    return run_scenario(sc, run_flags);
  }
  if (*bi)
  {
    int has = 0;
    double t = 0.0;
    if (!angle.empty())
    {
      const auto v = parse_angle(angle);
      if (!v)
      {
        std::cerr << "error: cannot read slant angle '" << angle << "'\n";
        return exit_usage;
      }
      has = 1;
      t = *v;
    }
    kv_scenario *sc = nullptr;
    const kv_status s = kv_scenario_builtin(name.c_str(), has, t, &sc);
    if (s != KV_OK)
      return error_exit(s);
    return run_scenario(sc, builtin_flags);
  }
  const kv_options o = options_from(paper_flags);
  kv_report *rep = nullptr;
  const kv_status s = kv_check_paper(&o, &rep);
  if (s != KV_OK)
    return error_exit(s);
  return finish(rep, paper_flags);
}
