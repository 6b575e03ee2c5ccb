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

#include "manifold.hpp"

#include "error.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace kv::manifold {

std::shared_ptr<const AmbientStructure> AmbientStructure::create(std::string name, std::vector<std::string> coords,
                                                                 std::vector<expr::Expr> phi,
                                                                 std::vector<expr::Expr> xi,
                                                                 std::vector<expr::Expr> eta,
                                                                 std::vector<expr::Expr> metric)
{
  const std::size_t dim = coords.size();
  std::vector<std::string> problems;
  if (dim == 0 || dim % 2 == 0)
    problems.push_back("ambient dimension must be odd, got " + std::to_string(dim));
  if (phi.size() != dim * dim)
    problems.push_back("phi must have " + std::to_string(dim * dim) + " entries, got " + std::to_string(phi.size()));
  if (metric.size() != dim * dim)
    problems.push_back("metric must have " + std::to_string(dim * dim) + " entries, got " +
                       std::to_string(metric.size()));
  if (xi.size() != dim)
    problems.push_back("xi must have " + std::to_string(dim) + " entries, got " + std::to_string(xi.size()));
  if (eta.size() != dim)
    problems.push_back("eta must have " + std::to_string(dim) + " entries, got " + std::to_string(eta.size()));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      if (coords[i] == coords[j])
        problems.push_back("duplicate coordinate name '" + coords[i] + "'");
  for (const auto &c : coords)
    if (c == "pi" || c == "e")
      problems.push_back("coordinate name '" + c + "' is reserved");
  auto check_vars = [&](const std::vector<expr::Expr> &list, const char *what) {
    for (const auto &e : list)
      for (const auto &v : e.variables())
        if (std::find(coords.begin(), coords.end(), v) == coords.end())
          problems.push_back(std::string(what) + " references unknown coordinate '" + v + "'");
  };
  check_vars(phi, "phi");
  check_vars(xi, "xi");
  check_vars(eta, "eta");
  check_vars(metric, "metric");
  if (!problems.empty())
    throw ValidationError(std::move(problems));

  auto amb = std::shared_ptr<AmbientStructure>(new AmbientStructure());
  amb->name_ = std::move(name);
  amb->coords_ = std::move(coords);
  amb->phi_ = std::move(phi);
  amb->xi_ = std::move(xi);
  amb->eta_ = std::move(eta);
  amb->metric_ = std::move(metric);
  auto compile = [&](const std::vector<expr::Expr> &src, std::vector<expr::Compiled> &dst) {
    dst.reserve(src.size());
    for (const auto &e : src)
      dst.emplace_back(e, amb->coords_);
  };
  compile(amb->phi_, amb->cphi_);
  compile(amb->xi_, amb->cxi_);
  compile(amb->eta_, amb->ceta_);
  compile(amb->metric_, amb->cmetric_);
  return amb;
}

namespace {

const std::vector<std::string> &r9_coords()
{
  static const std::vector<std::string> c{"x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4", "z"};
  return c;
}

// phi(d/dx_i) = -d/dy_i, phi(d/dy_j) = d/dx_j, phi(d/dz) = 0.
std::vector<expr::Expr> standard_phi()
{
  std::vector<expr::Expr> phi(81, expr::Expr::number(0.0));
  for (int i = 0; i < 4; ++i)
  {
    phi[static_cast<std::size_t>((4 + i) * 9 + i)] = expr::Expr::number(-1.0);
    phi[static_cast<std::size_t>(i * 9 + 4 + i)] = expr::Expr::number(1.0);
  }
  return phi;
}

std::vector<expr::Expr> unit_z(const expr::Expr &last)
{
  std::vector<expr::Expr> v(9, expr::Expr::number(0.0));
  v[8] = last;
  return v;
}

std::vector<expr::Expr> diagonal(const std::vector<expr::Expr> &diag)
{
  const std::size_t n = diag.size();
  std::vector<expr::Expr> m(n * n, expr::Expr::number(0.0));
  for (std::size_t i = 0; i < n; ++i)
    m[i * n + i] = diag[i];
  return m;
}

} // namespace

AmbientPtr builtin_ambient(std::string_view name)
{
  const expr::Expr one = expr::Expr::number(1.0);
  if (name == "example1_r9")
    return AmbientStructure::create("example1_r9", r9_coords(), standard_phi(), unit_z(one), unit_z(one),
                                    diagonal(std::vector<expr::Expr>(9, one)));
  if (name == "example2_kenmotsu")
  {
    std::vector<expr::Expr> d(9, expr::parse("exp(2*z)"));
    d[8] = one;
    return AmbientStructure::create("example2_kenmotsu", r9_coords(), standard_phi(), unit_z(one), unit_z(one),
                                    diagonal(d));
  }
  if (name == "example2_paper_literal")
  {
    const expr::Expr ez = expr::parse("exp(z)");
    return AmbientStructure::create("example2_paper_literal", r9_coords(), standard_phi(), unit_z(ez), unit_z(ez),
                                    diagonal(std::vector<expr::Expr>(9, expr::parse("exp(2*z)"))));
  }
  throw Error("unknown builtin ambient '" + std::string(name) + "'");
}

std::vector<std::string> builtin_ambient_names()
{
  return {"example1_r9", "example2_kenmotsu", "example2_paper_literal"};
}

Vec Christoffel::contract(const Vec &x, const Vec &y) const
{
  Vec r = Vec::Zero(dim_);
  for (int k = 0; k < dim_; ++k)
  {
    double acc = 0.0;
    for (int i = 0; i < dim_; ++i)
    {
      if (x(i) == 0.0)
        continue;
      for (int j = 0; j < dim_; ++j)
        acc += (*this)(k, i, j) * x(i) * y(j);
    }
    r(k) = acc;
  }
  return r;
}

Christoffel Christoffel::from_metric(const Mat &metric_inverse, const std::vector<Mat> &dmetric)
{
  const int n = static_cast<int>(metric_inverse.rows());
  Christoffel g(n);
  // first kind: [ij, l] = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
    {
      Vec first(n);
      for (int l = 0; l < n; ++l)
        first(l) = 0.5 * (dmetric[static_cast<std::size_t>(i)](j, l) + dmetric[static_cast<std::size_t>(j)](i, l) -
                          dmetric[static_cast<std::size_t>(l)](i, j));
      const Vec second = metric_inverse * first;
      for (int k = 0; k < n; ++k)
      {
        g(k, i, j) = second(k);
        g(k, j, i) = second(k);
      }
    }
  return g;
}

double metric_condition(const Mat &metric)
{
  Eigen::SelfAdjointEigenSolver<Mat> es(metric, Eigen::EigenvaluesOnly);
  const Vec ev = es.eigenvalues();
  const double hi = ev.maxCoeff();
  if (!(hi > 0.0))
    return ev.minCoeff() / std::max(std::abs(hi), 1e-300);
  return ev.minCoeff() / hi;
}

StructureEval evaluate_structure(const AmbientStructure &amb, const Vec &p)
{
  const int n = amb.dim();
  if (p.size() != n)
    throw GeometryError("point has " + std::to_string(p.size()) + " coordinates, ambient dimension is " +
                        std::to_string(n));
  std::vector<Jet2> seeds;
  seeds.reserve(static_cast<std::size_t>(n));
  std::vector<double> plain(p.data(), p.data() + n);
  for (int i = 0; i < n; ++i)
    seeds.push_back(Jet2::variable(p(i), n, i));

  StructureEval s;
  s.point = p;
  s.metric.resize(n, n);
  s.phi.resize(n, n);
  s.xi.resize(n);
  s.eta.resize(n);
  s.metric_jets.reserve(static_cast<std::size_t>(n * n));
  s.phi_jets.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
    {
      const auto idx = static_cast<std::size_t>(i * n + j);
      s.metric_jets.push_back(amb.compiled_metric()[idx].eval(std::span<const Jet2>(seeds), n));
      s.phi_jets.push_back(amb.compiled_phi()[idx].eval(std::span<const Jet2>(seeds), n));
      s.metric(i, j) = s.metric_jets.back().value();
      s.phi(i, j) = s.phi_jets.back().value();
    }
  for (int i = 0; i < n; ++i)
  {
    s.xi_jets.push_back(amb.compiled_xi()[static_cast<std::size_t>(i)].eval(std::span<const Jet2>(seeds), n));
    s.xi(i) = s.xi_jets.back().value();
    s.eta(i) = amb.compiled_eta()[static_cast<std::size_t>(i)].eval(std::span<const double>(plain));
  }

  const double scale = std::max(1.0, s.metric.cwiseAbs().maxCoeff());
  if ((s.metric - s.metric.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw GeometryError("metric is not symmetric at the sampled point");
  const double cond = metric_condition(s.metric);
  if (!(cond > 1e-12))
    throw GeometryError("metric is not positive definite at the sampled point (eigenvalue ratio " +
                        std::to_string(cond) + ")");
  s.metric_inverse = s.metric.ldlt().solve(Mat::Identity(n, n));
  s.metric_inverse = 0.5 * (s.metric_inverse + s.metric_inverse.transpose()).eval();

  s.dmetric.assign(static_cast<std::size_t>(n), Mat::Zero(n, n));
  s.dphi.assign(static_cast<std::size_t>(n), Mat::Zero(n, n));
  s.dxi = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k)
  {
    auto &dg = s.dmetric[static_cast<std::size_t>(k)];
    auto &dp = s.dphi[static_cast<std::size_t>(k)];
    for (int i = 0; i < n; ++i)
    {
      for (int j = 0; j < n; ++j)
      {
        const auto idx = static_cast<std::size_t>(i * n + j);
        dg(i, j) = s.metric_jets[idx].gradient()(k);
        dp(i, j) = s.phi_jets[idx].gradient()(k);
      }
      s.dxi(i, k) = s.xi_jets[static_cast<std::size_t>(i)].gradient()(k);
    }
  }
  s.gamma = Christoffel::from_metric(s.metric_inverse, s.dmetric);
  return s;
}

Christoffel christoffel(const AmbientStructure &amb, const Vec &p) { return evaluate_structure(amb, p).gamma; }

Vec ambient_covariant_derivative(const StructureEval &s, const FieldJet &x, const FieldJet &y)
{
  return y.jacobian * x.value + s.gamma.contract(x.value, y.value);
}

double AlmostContactResidual::max() const
{
  return std::max({phi_squared, phi_xi, eta_phi, eta_xi, compatibility});
}

AlmostContactResidual check_almost_contact(const StructureEval &s, double tol)
{
  const int n = s.dim();
  AlmostContactResidual r;
  const Mat id = Mat::Identity(n, n);
  r.phi_squared = (s.phi * s.phi + id - s.xi * s.eta.transpose()).cwiseAbs().maxCoeff();
  r.phi_xi = (s.phi * s.xi).cwiseAbs().maxCoeff();
  r.eta_phi = (s.eta.transpose() * s.phi).cwiseAbs().maxCoeff();
  r.eta_xi = std::abs(s.eta.dot(s.xi) - 1.0);
  r.compatibility =
    (s.phi.transpose() * s.metric * s.phi - s.metric + s.eta * s.eta.transpose()).cwiseAbs().maxCoeff();
  r.pass = r.max() < tol;
  return r;
}

AlmostContactResidual check_almost_contact(const AmbientStructure &amb, const Vec &p, double tol)
{
  return check_almost_contact(evaluate_structure(amb, p), tol);
}

KenmotsuResidual check_kenmotsu(const StructureEval &s, double tol)
{
  const int n = s.dim();
  KenmotsuResidual r;
  for (int a = 0; a < n; ++a)
  {
    const Vec x = Vec::Unit(n, a);
    const Vec phix = s.phi.col(a);
    for (int b = 0; b < n; ++b)
    {
      const Vec y = Vec::Unit(n, b);
      FieldJet phiy{s.phi.col(b), Mat(n, n)};
      for (int k = 0; k < n; ++k)
        phiy.jacobian.col(k) = s.dphi[static_cast<std::size_t>(k)].col(b);
      const Vec nabla_phiy = ambient_covariant_derivative(s, FieldJet{x, Mat::Zero(n, n)}, phiy);
      const Vec nabla_y = s.gamma.contract(x, y);
      const Vec lhs = nabla_phiy - s.phi * nabla_y;
      const Vec rhs = s.inner(phix, y) * s.xi - s.eta(b) * phix;
      const double res = s.norm(lhs - rhs);
      if (res > r.nabla_phi)
      {
        r.nabla_phi = res;
        r.worst_x = a;
        r.worst_y = b;
      }
    }
    const Vec nabla_xi = ambient_covariant_derivative(s, FieldJet{x, Mat::Zero(n, n)}, FieldJet{s.xi, s.dxi});
    r.nabla_xi = std::max(r.nabla_xi, s.norm(nabla_xi - x + s.eta(a) * s.xi));
  }
  r.pass = r.nabla_phi < tol && r.nabla_xi < tol;
  return r;
}

KenmotsuResidual check_kenmotsu(const AmbientStructure &amb, const Vec &p, double tol)
{
  return check_kenmotsu(evaluate_structure(amb, p), tol);
}

double metric_compatibility_residual(const StructureEval &s)
{
  const int n = s.dim();
  double worst = 0.0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
      {
        double rhs = 0.0;
        for (int l = 0; l < n; ++l)
          rhs += s.gamma(l, k, i) * s.metric(l, j) + s.gamma(l, k, j) * s.metric(i, l);
        worst = std::max(worst, std::abs(s.dmetric[static_cast<std::size_t>(k)](i, j) - rhs));
      }
  return worst;
}

} // namespace kv::manifold
