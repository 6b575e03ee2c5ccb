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

#ifndef KENVERIFY_REPORT_HPP
#define KENVERIFY_REPORT_HPP

#include "check.hpp"
#include "scenarios.hpp"
#include "warped.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kv::report {

struct ClassificationSummary
{
  std::string kind;
  std::optional<double> slant_angle;
  double spread = 0.0;
};

struct Report
{
  std::string scenario;
  std::string description;
  std::uint64_t seed = 0;
  int samples = 0;
  double tol_scale = 1.0;
  std::vector<CheckRecord> checks;
  std::optional<ClassificationSummary> classification;
  std::optional<warped::InequalitySummary> inequality;
  bool passed = false;
  bool expectations_met = false;
  std::vector<std::string> expectation_notes;

  const CheckRecord *find(std::string_view id) const;
};

/// passed = every non-diagnostic, non-skipped check passed. Expectations mark
/// the listed checks as expected failures and decide expectations_met.
void finalize_verdict(Report &r, const std::optional<scenarios::Expectation> &expect);

std::string to_json(const Report &r);
std::string to_table(const Report &r);

struct PaperReport
{
  std::vector<Report> reports;
  bool expectations_met = false;
};

std::string to_json(const PaperReport &r);
std::string to_table(const PaperReport &r);

} // namespace kv::report

#endif // KENVERIFY_REPORT_HPP
