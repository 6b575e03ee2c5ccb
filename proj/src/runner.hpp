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

#ifndef KENVERIFY_RUNNER_HPP
#define KENVERIFY_RUNNER_HPP

#include "report.hpp"
#include "scenarios.hpp"

#include <cstdint>
#include <optional>

namespace kv::runner {

struct Options
{
  std::optional<std::uint64_t> seed; // overrides the scenario seed
  std::optional<int> samples;        // overrides the scenario point count
  double tol_scale = 1.0;
};

/// Ambient, immersion, decomposition, distribution and (when declared)
/// warped-product checks, in that order.
report::Report run(const scenarios::Scenario &s, const Options &opt);

/// Every builtin scenario plus the finite-difference cross-checks.
report::PaperReport check_paper(const Options &opt);

} // namespace kv::runner

#endif // KENVERIFY_RUNNER_HPP
