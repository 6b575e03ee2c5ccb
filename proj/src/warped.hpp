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

#ifndef KENVERIFY_WARPED_HPP
#define KENVERIFY_WARPED_HPP

#include "distribution.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kv::warped {

using immersion::PointGeometry;

/// M_1 x_f M_2 in parameter coordinates. factor1 carries D + <xi>, factor2
/// carries D^theta; the warping depends on factor1 parameters only.
struct WarpSpec
{
  std::vector<int> factor1;
  std::vector<int> factor2;
  expr::Expr warping;
  std::optional<double> slant_theta;
};

/// f and the parameter gradient of ln f at a point.
struct WarpValue
{
  double f = 0.0;
  Vec dlnf;
};

WarpValue warp_at(const immersion::Immersion &imm, const WarpSpec &warp, const Vec &u);

/// |grad^T ln f|^2 in the induced metric of the first factor.
double warp_gradient_norm(const immersion::Immersion &imm, const WarpSpec &warp, const Vec &u);

/// Orthonormal frames adapted to D + <xi>, D^theta, F D^theta and nu.
struct AdaptedFrames
{
  std::vector<Vec> d;       // e_1..e_t, phi e_1..phi e_t, then xi/|xi|
  std::vector<Vec> theta;   // e*_j followed by sec(theta) P e*_j, pairwise
  std::vector<Vec> normal_f; // csc(theta) F e*_j and csc(theta) sec(theta) F P e*_j
  std::vector<Vec> nu;
  int t = 0;
  int s = 0;
  double orthonormality = 0.0; // max |gram - I| over all frames together

  std::vector<Vec> tangent() const;
  std::vector<Vec> normal() const;
};

/// Throws GeometryError when theta is within 1e-6 of 0 or pi/2 or the
/// dimension bookkeeping fails.
AdaptedFrames build_adapted_frames(const PointGeometry &pg, const SplitSpec &split, double theta);

/// |h|^2 in the adapted frames with its partial sums.
struct HNorm
{
  double lhs = 0.0;
  double dd = 0.0;    // D+<xi> x D+<xi> against F D^theta
  double mixed = 0.0; // D+<xi> x D^theta against F D^theta (counted once)
  double tt = 0.0;    // D^theta x D^theta against F D^theta
  double nu = 0.0;    // everything against nu
};

HNorm h_norm(const PointGeometry &pg, const AdaptedFrames &frames);

/// Sum of g(h(e_i,e_j), e_r)^2 over arbitrary orthonormal tangent and normal frames.
double h_norm_squared(const PointGeometry &pg, const std::vector<Vec> &tangent, const std::vector<Vec> &normal);

/// 4s(csc^2 theta + cot^2 theta)(|grad^T ln f|^2 - 1)
double h_norm_bound(int s, double theta, double grad_norm2);

struct InequalitySummary
{
  double lhs = 0.0; // at the point of minimum margin
  double rhs = 0.0;
  double min_margin = 0.0;
  double max_lhs = 0.0;
  std::string equality_verdict;
};

struct WarpedResult
{
  std::vector<CheckRecord> records;
  std::optional<InequalitySummary> inequality;
};

/// Full warped-product battery.
WarpedResult warped_checks(const Context &ctx, const WarpSpec &warp, const distribution::Classification &cls);

} // namespace kv::warped

#endif // KENVERIFY_WARPED_HPP
