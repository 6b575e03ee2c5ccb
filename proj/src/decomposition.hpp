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

#ifndef KENVERIFY_DECOMPOSITION_HPP
#define KENVERIFY_DECOMPOSITION_HPP

#include "context.hpp"

#include <vector>

namespace kv::decomposition {

using immersion::PointGeometry;

/// phi X = P X + F X for a tangent vector X (ambient components).
struct PFSplit
{
  Vec p; // tangent
  Vec f; // normal
};

PFSplit pf_split(const PointGeometry &pg, const Vec &x);
/// Same, with X given by parameter coefficients.
PFSplit pf_split(const immersion::Immersion &imm, const Vec &u, const Vec &x_params);

/// phi N = t N + f N for a normal vector N.
struct TFSplit
{
  Vec t; // tangent
  Vec f; // normal
};

/// Throws GeometryError if N has a tangential component above 1e-9 |N|.
TFSplit tf_split(const PointGeometry &pg, const Vec &n);

/// arccos(|PX| / |phi X|) in [0, pi/2]. Throws GeometryError when X is
/// within 1e-8 rad of xi or phi X vanishes.
double slant_angle(const PointGeometry &pg, const Vec &x);
double slant_angle(const immersion::Immersion &imm, const Vec &u, const Vec &x_params);

/// Least-squares lambda in P^2 X = lambda (-X + eta(X) xi) over the basis
/// (ambient tangent vectors). residual = max |P^2 X - lambda(...)| / |X|.
struct LambdaFit
{
  double lambda = 0.0;
  double residual = 0.0;
};

LambdaFit slant_lambda(const PointGeometry &pg, const std::vector<Vec> &basis);

/// Max over basis pairs of
///   |g(PX,PY) - cos^2 theta (g(X,Y) - eta(X)eta(Y))| / (|X||Y|)  (tangential)
///   |g(FX,FY) - sin^2 theta (g(X,Y) - eta(X)eta(Y))| / (|X||Y|)  (normal)
struct SlantNormResidual
{
  double tangential = 0.0;
  double normal = 0.0;
};

SlantNormResidual slant_norm_residuals(const PointGeometry &pg, const std::vector<Vec> &basis, double theta);

/// phi split in the parameter basis and the normal frame of the point.
struct PFDecomposition
{
  Vec base;
  Mat P; // n x n, column a = parameter coefficients of P d_a psi
  Mat F; // codim x n, column a = normal-frame components of F d_a psi
  Mat t; // n x codim
  Mat f; // codim x codim
  double reconstruction = 0.0;        // max |phi X - PX - FX| / |X| over the basis
  double normal_reconstruction = 0.0; // max |phi N - tN - fN| over the normal frame
  double skew = 0.0;                  // max |g(PX,Y) + g(X,PY)| / (|X||Y|)
};

PFDecomposition decompose(const PointGeometry &pg);

/// Pushforwards of the listed parameter fields.
std::vector<Vec> pushed_basis(const PointGeometry &pg, const std::vector<int> &indices);

/// Reconstruction, skew-adjointness, lambda fit and the slant norm identities
/// over all sampled points. theta is the measured slant angle of D^theta, or
/// NaN when no slant angle is available.
std::vector<CheckRecord> decomposition_checks(const Context &ctx, double theta);

} // namespace kv::decomposition

#endif // KENVERIFY_DECOMPOSITION_HPP
