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

#include <gtest/gtest.h>

#include <cstring>
#include <string>

namespace {

std::string take(char *s)
{
  std::string out = s ? s : "";
  kv_string_free(s);
  return out;
}

} // namespace

TEST(CApi, BuiltinRunAndReport)
{
  kv_scenario *s = nullptr;
  ASSERT_EQ(kv_scenario_builtin("example2", 1, 0.5, &s), KV_OK);
  EXPECT_STREQ(kv_scenario_name(s), "example2(theta0=0.5)");
  kv_options opt;
  kv_options_init(&opt);
  opt.samples = 20;
  kv_report *r = nullptr;
  ASSERT_EQ(kv_run(s, &opt, &r), KV_OK);
  EXPECT_EQ(kv_report_passed(r), 1);
  EXPECT_EQ(kv_report_expectations_met(r), 1);
  char *json = nullptr;
  ASSERT_EQ(kv_report_json(r, &json), KV_OK);
  EXPECT_NE(take(json).find("\"weingarten_duality\""), std::string::npos);
  char *table = nullptr;
  ASSERT_EQ(kv_report_table(r, &table), KV_OK);
  EXPECT_NE(take(table).find("verdict: pass"), std::string::npos);
  kv_report_free(r);
  kv_scenario_free(s);
}

TEST(CApi, ScenarioJsonRoundTrip)
{
  kv_scenario *s = nullptr;
  ASSERT_EQ(kv_scenario_builtin("example1", 0, 0.0, &s), KV_OK);
  char *text = nullptr;
  ASSERT_EQ(kv_scenario_to_json(s, &text), KV_OK);
  const std::string doc = take(text);
  kv_scenario *back = nullptr;
  ASSERT_EQ(kv_scenario_load_json(doc.data(), doc.size(), &back), KV_OK);
  char *again = nullptr;
  ASSERT_EQ(kv_scenario_to_json(back, &again), KV_OK);
  EXPECT_EQ(take(again), doc);
  kv_scenario_free(back);
  kv_scenario_free(s);
}

TEST(CApi, ErrorsAreCodedAndDescribed)
{
  kv_scenario *s = nullptr;
  EXPECT_EQ(kv_scenario_builtin("nope", 0, 0.0, &s), KV_ERR_UNKNOWN);
  EXPECT_EQ(s, nullptr);
  EXPECT_NE(std::string(kv_last_error()).find("nope"), std::string::npos);
  EXPECT_EQ(kv_scenario_builtin("example2", 1, 3.0, &s), KV_ERR_ARGUMENT);
  const char bad[] = "{\"name\": ";
  EXPECT_EQ(kv_scenario_load_json(bad, std::strlen(bad), &s), KV_ERR_PARSE);
  const char invalid[] = "{\"name\": \"x\"}";
  EXPECT_EQ(kv_scenario_load_json(invalid, std::strlen(invalid), &s), KV_ERR_VALIDATION);
  EXPECT_EQ(kv_run(nullptr, nullptr, nullptr), KV_ERR_ARGUMENT);
  EXPECT_STREQ(kv_status_string(KV_ERR_PARSE), "parse error");
  EXPECT_EQ(kv_report_passed(nullptr), 0);
  kv_scenario_free(nullptr);
  kv_report_free(nullptr);
}

TEST(CApi, BuiltinNames)
{
  char *names = nullptr;
  ASSERT_EQ(kv_builtin_names(&names), KV_OK);
  const std::string all = take(names);
  EXPECT_NE(all.find("example2_perturbed\n"), std::string::npos);
}
