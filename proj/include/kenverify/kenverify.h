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

#ifndef KENVERIFY_KENVERIFY_H
#define KENVERIFY_KENVERIFY_H

#include <stddef.h>
#include <stdint.h>

#if defined(KENVERIFY_BUILDING_LIBRARY)
#define KV_API __attribute__((visibility("default")))
#else
#define KV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kv_status
{
  KV_OK = 0,
  KV_ERR_ARGUMENT = 1,   /* null pointer or out-of-range argument */
  KV_ERR_PARSE = 2,      /* malformed scenario document or expression */
  KV_ERR_VALIDATION = 3, /* scenario rejected; message lists every violation */
  KV_ERR_DOMAIN = 4,     /* expression evaluated outside its domain */
  KV_ERR_GEOMETRY = 5,   /* singular metric, rank loss, ... */
  KV_ERR_UNKNOWN = 6,    /* unknown builtin name */
  KV_ERR_INTERNAL = 7
} kv_status;

typedef struct kv_scenario kv_scenario;
typedef struct kv_report kv_report;

typedef struct kv_options
{
  int has_seed;
  uint64_t seed;
  int samples;      /* <= 0 keeps the scenario's count */
  double tol_scale; /* multiplies every scaled tolerance */
} kv_options;

KV_API void kv_options_init(kv_options *opt);

/* theta0 is ignored when has_theta0 is 0. */
KV_API kv_status kv_scenario_builtin(const char *name, int has_theta0, double theta0, kv_scenario **out);
KV_API kv_status kv_scenario_load_json(const char *text, size_t length, kv_scenario **out);
/* Canonical document; release with kv_string_free. */
KV_API kv_status kv_scenario_to_json(const kv_scenario *s, char **out);
KV_API const char *kv_scenario_name(const kv_scenario *s);
KV_API void kv_scenario_free(kv_scenario *s);

/* Newline-separated list of builtin scenario names. */
KV_API kv_status kv_builtin_names(char **out);

KV_API kv_status kv_run(const kv_scenario *s, const kv_options *opt, kv_report **out);
/* Every builtin scenario plus the finite-difference cross-check. */
KV_API kv_status kv_check_paper(const kv_options *opt, kv_report **out);

KV_API int kv_report_passed(const kv_report *r);
/* 1 when expected-pass checks pass and expected-fail checks fail. */
KV_API int kv_report_expectations_met(const kv_report *r);
KV_API kv_status kv_report_json(const kv_report *r, char **out);
KV_API kv_status kv_report_table(const kv_report *r, char **out);
KV_API void kv_report_free(kv_report *r);

KV_API void kv_string_free(char *s);

/* Message for the most recent failure on the calling thread. */
KV_API const char *kv_last_error(void);
KV_API const char *kv_status_string(kv_status status);

#ifdef __cplusplus
}
#endif

#endif /* KENVERIFY_KENVERIFY_H */
