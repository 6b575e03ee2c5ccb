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

#include "check.hpp"
#include "report.hpp"
#include "runner.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <numbers>

using namespace kv;

TEST(Check, ToleranceTable)
{
  EXPECT_TRUE(is_known_check("weingarten_duality"));
  EXPECT_FALSE(is_known_check("no_such_check"));
  Tolerances t;
  t.scale = 1e-3;
  EXPECT_DOUBLE_EQ(t.get("weingarten_duality"), 1e-13);
  EXPECT_DOUBLE_EQ(t.get("slant_constancy"), 1e-6);
  t.overrides["weingarten_duality"] = 1e-4;
  EXPECT_DOUBLE_EQ(t.get("weingarten_duality"), 1e-7);
}

TEST(Check, AccumulatorRejectsNonFiniteAndEmpty)
{
  Accumulator a;
  EXPECT_FALSE(a.finish("x", "", "", 1.0, 0).pass);
  a.add(0.5);
  EXPECT_TRUE(a.finish("x", "", "", 1.0, 0).pass);
  a.add(std::nan(""));
  EXPECT_FALSE(a.finish("x", "", "", 1.0, 0).pass);
}

TEST(Check, StreamSeedsDiffer)
{
  EXPECT_NE(stream_seed(42, "a"), stream_seed(42, "b"));
  EXPECT_NE(stream_seed(42, "a"), stream_seed(7, "a"));
  EXPECT_EQ(stream_seed(42, "a"), stream_seed(42, "a"));
}

TEST(Runner, ReportsAreDeterministic)
{
  runner::Options opt;
  opt.samples = 30;
  const auto s = scenarios::builtin("example2", std::numbers::pi / 3);
  EXPECT_EQ(report::to_json(runner::run(s, opt)), report::to_json(runner::run(s, opt)));
}

TEST(Runner, Example1Summary)
{
  const auto r = runner::run(scenarios::builtin("example1"), {});
  ASSERT_TRUE(r.classification);
  EXPECT_EQ(r.classification->kind, "proper-semi-slant");
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.expectations_met);
  const auto *k = r.find("kenmotsu_nabla_phi");
  ASSERT_NE(k, nullptr);
  EXPECT_TRUE(k->expected_fail);
  const auto *skip = r.find("invariant_leaf_connection_identity");
  ASSERT_NE(skip, nullptr);
  EXPECT_TRUE(skip->skipped);
  EXPECT_NE(skip->note.find("Kenmotsu"), std::string::npos);
}

TEST(Runner, VerdictsDoNotDependOnTheSeed)
{
  for (const char *name : {"example2", "example2_cr", "example2_perturbed"})
  {
    runner::Options a, b;
    a.seed = 42;
    b.seed = 7;
    a.samples = b.samples = 40;
    const auto ra = runner::run(scenarios::builtin(name), a);
    const auto rb = runner::run(scenarios::builtin(name), b);
    EXPECT_EQ(ra.passed, rb.passed) << name;
    EXPECT_EQ(ra.expectations_met, rb.expectations_met) << name;
    // the negative control only keeps its verdict; which points admit adapted frames varies
    if (std::string(name) == "example2_perturbed")
      continue;
    for (const auto &c : ra.checks)
      if (const auto *other = rb.find(c.id); other && !c.diagnostic)
        EXPECT_EQ(c.pass, other->pass) << name << " " << c.id;
  }
}

TEST(Runner, TighteningSeparatesFiniteDifferencesFromJets)
{
  runner::Options opt;
  opt.tol_scale = 1e-3;
  opt.samples = 30;
  const auto r = runner::run(scenarios::builtin("example2", std::numbers::pi / 4), opt);
  EXPECT_TRUE(r.passed);
  const auto paper = runner::check_paper(opt);
  const auto &fd = paper.reports.back();
  EXPECT_FALSE(fd.passed);
}

TEST(Runner, RankFailureSkipsTheRest)
{
  auto s = scenarios::load(R"json({
    "name": "fold",
    "ambient": "example1_r9",
    "immersion": {"parameters": ["a", "b", "z"], "map": ["a^2", "0", "0", "0", "b", "0", "0", "0", "z"]},
    "split": {"D": [], "D_theta": ["a", "b"], "xi": "z"},
    "sampling": {"mode": "fixed-list", "points": [[0.5, 0, 0], [0, 0.1, 0.2]]}
  })json");
  const auto r = runner::run(s, {});
  const auto *rank = r.find("immersion_rank");
  ASSERT_NE(rank, nullptr);
  EXPECT_FALSE(rank->pass);
  EXPECT_NE(rank->note.find("u = (0, 0.1, 0.2)"), std::string::npos) << rank->note;
  EXPECT_FALSE(r.passed);
}

TEST(Report, JsonCarriesVerdictAndRecords)
{
  runner::Options opt;
  opt.samples = 20;
  const auto r = runner::run(scenarios::builtin("example2_cr"), opt);
  const auto j = nlohmann::json::parse(report::to_json(r));
  EXPECT_EQ(j["scenario"], "example2_cr");
  EXPECT_TRUE(j["passed"].get<bool>());
  ASSERT_TRUE(j["checks"].is_array());
  EXPECT_EQ(j["checks"].size(), r.checks.size());
  EXPECT_TRUE(j["checks"][0].contains("max_residual"));
  EXPECT_TRUE(j["checks"][0].contains("tolerance"));
  EXPECT_TRUE(j["checks"][0].contains("seed"));
}
