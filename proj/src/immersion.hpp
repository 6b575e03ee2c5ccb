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

#ifndef KENVERIFY_IMMERSION_HPP
#define KENVERIFY_IMMERSION_HPP

#include "frames.hpp"
#include "manifold.hpp"

#include <memory>
#include <string>
#include <vector>

namespace kv::immersion {

/// Parametric map u -> psi(u) into an ambient chart; one expression per
/// ambient coordinate, each over the parameter names.
class Immersion
{
public:
  static std::shared_ptr<const Immersion> create(std::vector<std::string> params, std::vector<expr::Expr> target,
                                                 manifold::AmbientPtr ambient);

  int n() const { return static_cast<int>(params_.size()); }
  int dim() const { return ambient_->dim(); }
  const std::vector<std::string> &params() const { return params_; }
  const std::vector<expr::Expr> &target() const { return target_; }
  const manifold::AmbientStructure &ambient() const { return *ambient_; }
  const manifold::AmbientPtr &ambient_ptr() const { return ambient_; }
  const std::vector<expr::Compiled> &compiled_target() const { return ctarget_; }

  /// Index of a parameter name, or -1.
  int param_index(const std::string &name) const;

private:
  Immersion() = default;

  std::vector<std::string> params_;
  std::vector<expr::Expr> target_;
  std::vector<expr::Compiled> ctarget_;
  manifold::AmbientPtr ambient_;
};

using ImmersionPtr = std::shared_ptr<const Immersion>;

/// Everything the pointwise checks need at one parameter point. Tangent
/// vectors are handled either as ambient vectors or as parameter-basis
/// coefficient vectors; `push` and `param_coords` convert between the two.
struct PointGeometry
{
  Vec u;
  Vec position;
  Mat jacobian;            // dim x n, columns d_a psi
  std::vector<Vec> second; // second[a*n+b] = d_a d_b psi
  manifold::StructureEval ambient;
  Mat induced_metric;
  Frame tangent;
  Frame orthonormal_tangent;
  Mat tangent_coefficients; // orthonormal_tangent[i] = jacobian * tangent_coefficients.col(i)
  Frame normal;
  std::vector<Vec> nabla; // nabla[a*n+b] = d_a d_b psi + Gamma(d_a psi, d_b psi)
  std::vector<Vec> h;     // normal part of nabla
  double smallest_singular_value = 0.0;

  int n() const { return static_cast<int>(jacobian.cols()); }
  int dim() const { return static_cast<int>(jacobian.rows()); }

  double inner(const Vec &a, const Vec &b) const { return ambient.inner(a, b); }
  double norm(const Vec &a) const { return ambient.norm(a); }

  Vec push(const Vec &coeffs) const { return jacobian * coeffs; }
  Vec tangential(const Vec &v) const;
  Vec normal_part(const Vec &v) const { return v - tangential(v); }
  /// Parameter coefficients of the tangential part of v.
  Vec param_coords(const Vec &v) const;

  /// Ambient derivative of Y along X, both constant-coefficient combinations
  /// of the coordinate fields.
  Vec ambient_derivative(const Vec &x, const Vec &y) const;
  /// Induced connection nabla_X Y (tangential part), as an ambient vector.
  Vec connection(const Vec &x, const Vec &y) const { return tangential(ambient_derivative(x, y)); }
};

/// Throws RankError when the g-orthonormalized Jacobian has a singular value
/// at or below 1e-8.
PointGeometry evaluate_point(const Immersion &imm, const Vec &u);

Frame tangent_frame(const Immersion &imm, const Vec &u);
Mat induced_metric(const Immersion &imm, const Vec &u);
Frame normal_frame(const Immersion &imm, const Vec &u);

/// Smallest singular value of L^T J where g = L L^T.
double smallest_singular_value(const Mat &jacobian, const Mat &metric);

/// h(X, Y) for parameter-coefficient vectors X, Y.
Vec second_fundamental_form(const PointGeometry &pg, const Vec &x, const Vec &y);
Vec second_fundamental_form(const Immersion &imm, const Vec &u, const Vec &x, const Vec &y);

/// A_N X: tangential part of -nabla_X N for a normal N extended as any normal
/// field through it. Computed by differentiating g(N, d_b psi) = 0 along the
/// submanifold, so no extension needs to be materialized. Throws GeometryError
/// if N has a tangential component above 1e-9 |N|.
Vec shape_operator(const PointGeometry &pg, const Vec &normal, const Vec &x);
Vec shape_operator(const Immersion &imm, const Vec &u, const Vec &normal, const Vec &x);

/// Levi-Civita connection of the induced metric in parameter coordinates,
/// from jets of g o psi (intrinsic route, independent of the Gauss formula).
struct InducedConnection
{
  Mat metric;
  std::vector<Mat> dmetric;
  manifold::Christoffel gamma;
};

InducedConnection induced_connection(const Immersion &imm, const Vec &u);

} // namespace kv::immersion

#endif // KENVERIFY_IMMERSION_HPP
