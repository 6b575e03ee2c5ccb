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

#ifndef KENVERIFY_MANIFOLD_HPP
#define KENVERIFY_MANIFOLD_HPP

#include "expr.hpp"
#include "jet2.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace kv::manifold {

/// An almost contact metric structure (phi, xi, eta, g) on a single global
/// chart of odd dimension. phi is stored row-major: phi[i*dim + j] is the
/// i-th component of phi applied to the j-th chart basis vector.
class AmbientStructure
{
public:
  static std::shared_ptr<const AmbientStructure> create(std::string name, std::vector<std::string> coords,
                                                        std::vector<expr::Expr> phi, std::vector<expr::Expr> xi,
                                                        std::vector<expr::Expr> eta,
                                                        std::vector<expr::Expr> metric);

  const std::string &name() const { return name_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<std::string> &coords() const { return coords_; }
  const std::vector<expr::Expr> &phi() const { return phi_; }
  const std::vector<expr::Expr> &xi() const { return xi_; }
  const std::vector<expr::Expr> &eta() const { return eta_; }
  const std::vector<expr::Expr> &metric() const { return metric_; }

  const std::vector<expr::Compiled> &compiled_phi() const { return cphi_; }
  const std::vector<expr::Compiled> &compiled_xi() const { return cxi_; }
  const std::vector<expr::Compiled> &compiled_eta() const { return ceta_; }
  const std::vector<expr::Compiled> &compiled_metric() const { return cmetric_; }

private:
  AmbientStructure() = default;

  std::string name_;
  std::vector<std::string> coords_;
  std::vector<expr::Expr> phi_, xi_, eta_, metric_;
  std::vector<expr::Compiled> cphi_, cxi_, ceta_, cmetric_;
};

using AmbientPtr = std::shared_ptr<const AmbientStructure>;

/// "example1_r9", "example2_kenmotsu", "example2_paper_literal".
AmbientPtr builtin_ambient(std::string_view name);
std::vector<std::string> builtin_ambient_names();

/// Christoffel symbols of the second kind, gamma(k, i, j) = Gamma^k_{ij}.
class Christoffel
{
public:
  Christoffel() = default;
  explicit Christoffel(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim * dim * dim), 0.0) {}

  int dim() const { return dim_; }
  double &operator()(int k, int i, int j) { return data_[static_cast<std::size_t>((k * dim_ + i) * dim_ + j)]; }
  double operator()(int k, int i, int j) const
  {
    return data_[static_cast<std::size_t>((k * dim_ + i) * dim_ + j)];
  }

  /// Gamma^k_{ij} X^i Y^j.
  Vec contract(const Vec &x, const Vec &y) const;

  /// Built from g^{-1} and the first partials of g: dmetric[k] = d_k g.
  static Christoffel from_metric(const Mat &metric_inverse, const std::vector<Mat> &dmetric);

private:
  int dim_ = 0;
  std::vector<double> data_;
};

/// All structure tensors and their jets at one chart point.
struct StructureEval
{
  Vec point;
  Mat phi;
  Vec xi;
  Vec eta;
  Mat metric;
  Mat metric_inverse;
  std::vector<Jet2> metric_jets; // row-major
  std::vector<Jet2> phi_jets;    // row-major
  std::vector<Jet2> xi_jets;
  std::vector<Mat> dmetric; // dmetric[k] = d_k g
  std::vector<Mat> dphi;    // dphi[k] = d_k phi
  Mat dxi;                  // dxi(i, k) = d_k xi^i
  Christoffel gamma;

  int dim() const { return static_cast<int>(point.size()); }
  double inner(const Vec &a, const Vec &b) const { return a.dot(metric * b); }
  double norm(const Vec &a) const { return std::sqrt(std::max(0.0, inner(a, a))); }
};

/// Throws GeometryError when g is not positive definite at p (smallest
/// eigenvalue <= 1e-12 times the largest), DomainError on expression failure.
StructureEval evaluate_structure(const AmbientStructure &amb, const Vec &p);

Christoffel christoffel(const AmbientStructure &amb, const Vec &p);

/// Value and first partials of a vector field at a point: jacobian(k, i) = d_i Y^k.
struct FieldJet
{
  Vec value;
  Mat jacobian;
};

/// (nabla_X Y)^k = X^i d_i Y^k + Gamma^k_{ij} X^i Y^j.
Vec ambient_covariant_derivative(const StructureEval &s, const FieldJet &x, const FieldJet &y);

struct AlmostContactResidual
{
  double phi_squared = 0.0;   // phi^2 + I - eta (x) xi
  double phi_xi = 0.0;        // phi xi
  double eta_phi = 0.0;       // eta o phi
  double eta_xi = 0.0;        // eta(xi) - 1
  double compatibility = 0.0; // g(phi X, phi Y) - g(X, Y) + eta(X) eta(Y)
  bool pass = false;

  double max() const;
};

AlmostContactResidual check_almost_contact(const StructureEval &s, double tol);
AlmostContactResidual check_almost_contact(const AmbientStructure &amb, const Vec &p, double tol);

struct KenmotsuResidual
{
  double nabla_phi = 0.0; // max g-norm of (nabla_X phi)Y - g(phi X, Y) xi + eta(Y) phi X
  double nabla_xi = 0.0;  // max g-norm of nabla_X xi - X + eta(X) xi
  int worst_x = 0;        // chart basis pair attaining nabla_phi
  int worst_y = 0;
  bool pass = false;

  double max() const { return std::max(nabla_phi, nabla_xi); }
};

KenmotsuResidual check_kenmotsu(const StructureEval &s, double tol);
KenmotsuResidual check_kenmotsu(const AmbientStructure &amb, const Vec &p, double tol);

/// max |d_k g_ij - Gamma^l_{ki} g_lj - Gamma^l_{kj} g_il|.
double metric_compatibility_residual(const StructureEval &s);

/// Smallest over largest eigenvalue of g.
double metric_condition(const Mat &metric);

} // namespace kv::manifold

#endif // KENVERIFY_MANIFOLD_HPP
