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

#ifndef KENVERIFY_CROSSCHECK_HPP
#define KENVERIFY_CROSSCHECK_HPP

#include "immersion.hpp"
#include "report.hpp"

#include <cstdint>

namespace kv::crosscheck {

/// Christoffel symbols from central differences of g (plain evaluation).
manifold::Christoffel fd_christoffel(const manifold::AmbientStructure &amb, const Vec &p, double step = 1e-5);

/// h(d_a psi, d_b psi) from central differences of psi and g, indexed a*n+b.
std::vector<Vec> fd_second_fundamental_form(const immersion::Immersion &imm, const Vec &u, double step = 1e-5);

/// max |jet - fd| / max(1, max |jet|)
double relative_error(const manifold::Christoffel &jet, const manifold::Christoffel &fd);
double relative_error(const std::vector<Vec> &jet, const std::vector<Vec> &fd);

/// Jet-versus-difference comparison on the builtin ambients and the builtin
/// example immersions.
report::Report finite_difference_report(std::uint64_t seed, int points, double tol_scale);

} // namespace kv::crosscheck

#endif // KENVERIFY_CROSSCHECK_HPP
