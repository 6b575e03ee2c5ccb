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

#ifndef KENVERIFY_DISTRIBUTION_HPP
#define KENVERIFY_DISTRIBUTION_HPP

#include "context.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace kv::distribution {

using immersion::PointGeometry;

enum class Kind
{
  Invariant,
  AntiInvariant,
  Slant,
  ContactCR,
  SemiSlant,
  ProperSemiSlant,
  Unclassified
};

std::string_view kind_name(Kind k);

struct Classification
{
  Kind kind = Kind::Unclassified;
  bool split_valid = false;
  bool d_invariant = false;
  bool slant_constant = false;
  std::optional<double> slant_angle; // mean measured angle on D^theta
  double spread = 0.0;               // max - min angle over all sampled directions
  double theta_min = 0.0;
  double theta_max = 0.0;
  std::vector<CheckRecord> evidence;

  bool semi_slant_family() const
  {
    return kind == Kind::ProperSemiSlant || kind == Kind::ContactCR || kind == Kind::SemiSlant;
  }
};

/// Split validity, invariance of D, slant constancy on D^theta and the
/// resulting kind. angle_tol separates theta from 0 and pi/2.
Classification classify(const Context &ctx, double angle_tol = 1e-6);

/// [A,B]^a = A^b d_b B^a - B^b d_b A^a for fields given as expressions over
/// the immersion parameters.
Vec lie_bracket(const immersion::Immersion &imm, const Vec &u, const std::vector<expr::Expr> &a,
                const std::vector<expr::Expr> &b);

/// Normalized residuals of the three connection identities on a Kenmotsu
/// ambient. Vectors are parameter coefficients; X, Y in D + <xi>, Z, W in D^theta.
double invariant_leaf_identity_residual(const PointGeometry &pg, double theta, const Vec &x, const Vec &y,
                                        const Vec &z);
double slant_leaf_identity_residual(const PointGeometry &pg, double theta, const Vec &x, const Vec &z,
                                    const Vec &w);
/// bracket: parameter coefficients of [Z, W] at the point.
double slant_bracket_identity_residual(const PointGeometry &pg, double theta, const Vec &x, const Vec &z,
                                       const Vec &w, const Vec &bracket);

/// g(A_{FZ} phi X - A_{FPZ} X, Y), the shape-operator combination shared by
/// the identities above.
double shape_combination(const PointGeometry &pg, const Vec &x, const Vec &z, const Vec &y);

/// The three identities over the standard tuple sample; skipped with a reason
/// when the ambient is not Kenmotsu-verified or theta is unsuitable.
std::vector<CheckRecord> connection_identity_checks(const Context &ctx, const Classification &cls);

/// Totally geodesic and integrability residuals of both leaves. The invariant
/// leaf residuals count toward the verdict only when `warped` is set.
std::vector<CheckRecord> foliation_checks(const Context &ctx, const Classification &cls, bool warped);

} // namespace kv::distribution

#endif // KENVERIFY_DISTRIBUTION_HPP
