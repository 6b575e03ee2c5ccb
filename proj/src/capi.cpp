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

#include "kenverify/kenverify.h"

#include "error.hpp"
#include "runner.hpp"
#include "scenarios.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <variant>

struct kv_scenario
{
  kv::scenarios::Scenario value;
};

struct kv_report
{
  std::variant<kv::report::Report, kv::report::PaperReport> value;
};

namespace {

thread_local std::string last_error;

kv_status fail(kv_status s, std::string message)
{
  last_error = std::move(message);
  return s;
}

char *copy_string(const std::string &s)
{
  auto *p = static_cast<char *>(std::malloc(s.size() + 1));
  if (p)
    std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

kv_status emit(const std::string &s, char **out)
{
  *out = copy_string(s);
  return *out ? KV_OK : fail(KV_ERR_INTERNAL, "out of memory");
}

template <class F>
kv_status guarded(F &&f)
{
  try
  {
    last_error.clear();
    return f();
  }
  catch (const kv::ParseError &e)
  {
    return fail(KV_ERR_PARSE, e.what());
  }
  catch (const kv::ValidationError &e)
  {
    return fail(KV_ERR_VALIDATION, e.what());
  }
  catch (const kv::DomainError &e)
  {
    return fail(KV_ERR_DOMAIN, e.what());
  }
  catch (const kv::GeometryError &e)
  {
    return fail(KV_ERR_GEOMETRY, e.what());
  }
  catch (const kv::Error &e)
  {
    const std::string m = e.what();
    return fail(m.rfind("unknown", 0) == 0 ? KV_ERR_UNKNOWN : KV_ERR_ARGUMENT, m);
  }
  catch (const std::bad_alloc &)
  {
    return fail(KV_ERR_INTERNAL, "out of memory");
  }
  catch (const std::exception &e)
  {
    return fail(KV_ERR_INTERNAL, e.what());
  }
}

kv::runner::Options to_options(const kv_options *opt)
{
  kv::runner::Options o;
  if (!opt)
    return o;
  if (opt->has_seed)
    o.seed = opt->seed;
  if (opt->samples > 0)
    o.samples = opt->samples;
  o.tol_scale = opt->tol_scale;
  return o;
}

} // namespace

extern "C" {

void kv_options_init(kv_options *opt)
{
  if (!opt)
    return;
  opt->has_seed = 0;
  opt->seed = 0;
  opt->samples = 0;
  opt->tol_scale = 1.0;
}

kv_status kv_scenario_builtin(const char *name, int has_theta0, double theta0, kv_scenario **out)
{
  if (!name || !out)
    return fail(KV_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::optional<double> t;
    if (has_theta0)
      t = theta0;
    *out = new kv_scenario{kv::scenarios::builtin(name, t)};
    return KV_OK;
  });
}

kv_status kv_scenario_load_json(const char *text, size_t length, kv_scenario **out)
{
  if (!text || !out)
    return fail(KV_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new kv_scenario{kv::scenarios::load(std::string_view(text, length))};
    return KV_OK;
  });
}

kv_status kv_scenario_to_json(const kv_scenario *s, char **out)
{
  if (!s || !out)
    return fail(KV_ERR_ARGUMENT, "null argument");
  return guarded([&] { return emit(kv::scenarios::serialize(s->value), out); });
}

const char *kv_scenario_name(const kv_scenario *s)
{
  return s ? s->value.name.c_str() : nullptr;
}

void kv_scenario_free(kv_scenario *s)
{
  delete s;
}

kv_status kv_builtin_names(char **out)
{
  if (!out)
    return fail(KV_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::string all;
    for (const auto &n : kv::scenarios::builtin_names())
      all += n + "\n";
    return emit(all, out);
  });
}

kv_status kv_run(const kv_scenario *s, const kv_options *opt, kv_report **out)
{
  if (!s || !out)
    return fail(KV_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new kv_report{kv::runner::run(s->value, to_options(opt))};
    return KV_OK;
  });
}

kv_status kv_check_paper(const kv_options *opt, kv_report **out)
{
  if (!out)
    return fail(KV_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new kv_report{kv::runner::check_paper(to_options(opt))};
    return KV_OK;
  });
}

int kv_report_passed(const kv_report *r)
{
  if (!r)
    return 0;
  if (const auto *one = std::get_if<kv::report::Report>(&r->value))
    return one->passed ? 1 : 0;
  for (const auto &x : std::get<kv::report::PaperReport>(r->value).reports)
    if (!x.passed)
      return 0;
  return 1;
}

int kv_report_expectations_met(const kv_report *r)
{
  if (!r)
    return 0;
  return std::visit([](const auto &v) { return v.expectations_met ? 1 : 0; }, r->value);
}

kv_status kv_report_json(const kv_report *r, char **out)
{
  if (!r || !out)
    return fail(KV_ERR_ARGUMENT, "null argument");
  return guarded([&] { return emit(std::visit([](const auto &v) { return kv::report::to_json(v); }, r->value), out); });
}

kv_status kv_report_table(const kv_report *r, char **out)
{
  if (!r || !out)
    return fail(KV_ERR_ARGUMENT, "null argument");
  return guarded(
    [&] { return emit(std::visit([](const auto &v) { return kv::report::to_table(v); }, r->value), out); });
}

void kv_report_free(kv_report *r)
{
  delete r;
}

void kv_string_free(char *s)
{
  std::free(s);
}

const char *kv_last_error(void)
{
  return last_error.c_str();
}

const char *kv_status_string(kv_status status)
{
  switch (status)
  {
  case KV_OK: return "ok";
  case KV_ERR_ARGUMENT: return "invalid argument";
  case KV_ERR_PARSE: return "parse error";
  case KV_ERR_VALIDATION: return "validation error";
  case KV_ERR_DOMAIN: return "domain error";
  case KV_ERR_GEOMETRY: return "geometry error";
  case KV_ERR_UNKNOWN: return "unknown name";
  case KV_ERR_INTERNAL: return "internal error";
  }
  return "unrecognized status";
}

} // extern "C"
