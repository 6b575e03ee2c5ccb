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

#include "immersion.hpp"

#include "error.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <set>

namespace kv::immersion {

std::shared_ptr<const Immersion> Immersion::create(std::vector<std::string> params, std::vector<expr::Expr> target,
                                                   manifold::AmbientPtr ambient)
{
  std::vector<std::string> violations;
  if (!ambient)
    throw ValidationError({"immersion has no ambient structure"});
  if (params.empty())
    violations.push_back("immersion needs at least one parameter");
  if (static_cast<int>(params.size()) >= ambient->dim())
    violations.push_back("parameter count " + std::to_string(params.size()) +
                         " must be below the ambient dimension " + std::to_string(ambient->dim()));
  if (static_cast<int>(target.size()) != ambient->dim())
    violations.push_back("immersion has " + std::to_string(target.size()) + " components, ambient dimension is " +
                         std::to_string(ambient->dim()));

  std::set<std::string> seen;
  for (const auto &p : params)
  {
    if (!seen.insert(p).second)
      violations.push_back("duplicate parameter '" + p + "'");
    if (p == "pi" || p == "e")
      violations.push_back("parameter name '" + p + "' is reserved");
  }
  for (std::size_t i = 0; i < target.size(); ++i)
    for (const auto &v : target[i].variables())
      if (!seen.count(v))
        violations.push_back("immersion component " + std::to_string(i) + " uses unknown parameter '" + v + "'");
  if (!violations.empty())
    throw ValidationError(std::move(violations));

  std::shared_ptr<Immersion> imm(new Immersion());
  imm->params_ = std::move(params);
  imm->target_ = std::move(target);
  imm->ambient_ = std::move(ambient);
  for (const auto &t : imm->target_)
    imm->ctarget_.emplace_back(t, imm->params_);
  return imm;
}

int Immersion::param_index(const std::string &name) const
{
  auto it = std::find(params_.begin(), params_.end(), name);
  return it == params_.end() ? -1 : static_cast<int>(it - params_.begin());
}

namespace {

std::vector<Jet2> target_jets(const Immersion &imm, const Vec &u)
{
  const int n = imm.n();
  if (u.size() != n)
    throw GeometryError("parameter point has " + std::to_string(u.size()) + " entries, expected " +
                        std::to_string(n));
  std::vector<Jet2> seeds;
  for (int a = 0; a < n; ++a)
    seeds.push_back(Jet2::variable(u(a), n, a));
  std::vector<Jet2> out;
  out.reserve(imm.compiled_target().size());
  for (const auto &c : imm.compiled_target())
    out.push_back(c.eval(seeds, n));
  return out;
}

} // namespace

double smallest_singular_value(const Mat &jacobian, const Mat &metric)
{
  Eigen::LLT<Mat> llt(metric);
  const Mat scaled = Mat(llt.matrixL()).transpose() * jacobian;
  Eigen::JacobiSVD<Mat> svd(scaled);
  const auto &sv = svd.singularValues();
  return sv.size() == 0 ? 0.0 : sv(sv.size() - 1);
}

Vec PointGeometry::tangential(const Vec &v) const
{
  Vec out = Vec::Zero(v.size());
  for (const auto &e : orthonormal_tangent.vectors)
    out += inner(v, e) * e;
  return out;
}

Vec PointGeometry::param_coords(const Vec &v) const
{
  // coefficients in the orthonormal frame, mapped back through C
  Vec w(n());
  for (int i = 0; i < n(); ++i)
    w(i) = inner(v, orthonormal_tangent.vectors[static_cast<std::size_t>(i)]);
  return tangent_coefficients * w;
}

Vec PointGeometry::ambient_derivative(const Vec &x, const Vec &y) const
{
  Vec out = Vec::Zero(dim());
  for (int a = 0; a < n(); ++a)
    for (int b = 0; b < n(); ++b)
      out += x(a) * y(b) * nabla[static_cast<std::size_t>(a * n() + b)];
  return out;
}

PointGeometry evaluate_point(const Immersion &imm, const Vec &u)
{
  const int n = imm.n();
  const int dim = imm.dim();
  const auto jets = target_jets(imm, u);

  PointGeometry pg;
  pg.u = u;
  pg.position.resize(dim);
  pg.jacobian.resize(dim, n);
  pg.second.assign(static_cast<std::size_t>(n * n), Vec::Zero(dim));
  for (int k = 0; k < dim; ++k)
  {
    const auto &j = jets[static_cast<std::size_t>(k)];
    pg.position(k) = j.value();
    pg.jacobian.row(k) = j.gradient().transpose();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        pg.second[static_cast<std::size_t>(a * n + b)](k) = j.hessian()(a, b);
  }

  pg.ambient = manifold::evaluate_structure(imm.ambient(), pg.position);
  const Mat &g = pg.ambient.metric;

  pg.smallest_singular_value = smallest_singular_value(pg.jacobian, g);
  if (!(pg.smallest_singular_value > 1e-8))
    throw RankError("immersion is not of full rank", pg.smallest_singular_value);

  pg.induced_metric = pg.jacobian.transpose() * g * pg.jacobian;
  pg.induced_metric = 0.5 * (pg.induced_metric + pg.induced_metric.transpose()).eval();

  std::vector<Vec> cols;
  for (int a = 0; a < n; ++a)
    cols.push_back(pg.jacobian.col(a));
  pg.tangent = make_frame(pg.position, cols, g);
  auto ortho = orthonormalize_with_coefficients(pg.tangent, g);
  pg.orthonormal_tangent = std::move(ortho.frame);
  pg.tangent_coefficients = std::move(ortho.coefficients);

  std::vector<Vec> candidates;
  for (int k = 0; k < dim; ++k)
    candidates.push_back(Vec::Unit(dim, k));
  auto normals = complete_orthonormal(pg.orthonormal_tangent.vectors, candidates, g,
                                      static_cast<std::size_t>(dim - n));
  pg.normal = make_frame(pg.position, std::move(normals), g);

  pg.nabla.resize(static_cast<std::size_t>(n * n));
  pg.h.resize(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
    {
      Vec v = pg.second[static_cast<std::size_t>(a * n + b)] +
              pg.ambient.gamma.contract(pg.jacobian.col(a), pg.jacobian.col(b));
      Vec hv = pg.normal_part(v);
      pg.nabla[static_cast<std::size_t>(a * n + b)] = v;
      pg.nabla[static_cast<std::size_t>(b * n + a)] = v;
      pg.h[static_cast<std::size_t>(a * n + b)] = hv;
      pg.h[static_cast<std::size_t>(b * n + a)] = hv;
    }
  return pg;
}

Frame tangent_frame(const Immersion &imm, const Vec &u) { return evaluate_point(imm, u).tangent; }

Mat induced_metric(const Immersion &imm, const Vec &u) { return evaluate_point(imm, u).induced_metric; }

Frame normal_frame(const Immersion &imm, const Vec &u) { return evaluate_point(imm, u).normal; }

Vec second_fundamental_form(const PointGeometry &pg, const Vec &x, const Vec &y)
{
  const int n = pg.n();
  Vec out = Vec::Zero(pg.dim());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out += x(a) * y(b) * pg.h[static_cast<std::size_t>(a * n + b)];
  return out;
}

Vec second_fundamental_form(const Immersion &imm, const Vec &u, const Vec &x, const Vec &y)
{
  return second_fundamental_form(evaluate_point(imm, u), x, y);
}

Vec shape_operator(const PointGeometry &pg, const Vec &normal, const Vec &x)
{
  const int n = pg.n();
  const int dim = pg.dim();
  const auto &s = pg.ambient;
  const double scale = pg.norm(normal);
  for (int b = 0; b < n; ++b)
  {
    const Vec &e = pg.orthonormal_tangent.vectors[static_cast<std::size_t>(b)];
    if (std::abs(pg.inner(normal, e)) > 1e-9 * std::max(scale, 1e-300))
      throw GeometryError("shape operator needs a normal vector; tangential component " +
                          std::to_string(pg.inner(normal, e)));
  }

  // w_b = g(-nabla_X N, d_b psi)
  //     = X^a [ g(N, d_a d_b psi) + (d_X g)(N, d_b psi) - g(Gamma(d_a psi, N), d_b psi) ]
  Mat dgx = Mat::Zero(dim, dim);
  const Vec xa = pg.push(x);
  for (int k = 0; k < dim; ++k)
    dgx += xa(k) * s.dmetric[static_cast<std::size_t>(k)];
  const Vec gamma_xn = s.gamma.contract(xa, normal);

  Vec w(n);
  for (int b = 0; b < n; ++b)
  {
    const Vec db = pg.jacobian.col(b);
    double acc = 0.0;
    for (int a = 0; a < n; ++a)
      acc += x(a) * pg.inner(normal, pg.second[static_cast<std::size_t>(a * n + b)]);
    acc += normal.dot(dgx * db);
    acc -= pg.inner(gamma_xn, db);
    w(b) = acc;
  }
  // express in the orthonormal frame e_i = J C_i: g(T, e_i) = C_i . w
  const Vec coeffs = pg.tangent_coefficients.transpose() * w;
  Vec out = Vec::Zero(dim);
  for (int i = 0; i < n; ++i)
    out += coeffs(i) * pg.orthonormal_tangent.vectors[static_cast<std::size_t>(i)];
  return out;
}

Vec shape_operator(const Immersion &imm, const Vec &u, const Vec &normal, const Vec &x)
{
  return shape_operator(evaluate_point(imm, u), normal, x);
}

InducedConnection induced_connection(const Immersion &imm, const Vec &u)
{
  const int n = imm.n();
  const int dim = imm.dim();
  const auto psi = target_jets(imm, u);

  std::vector<Jet2> gj;
  gj.reserve(static_cast<std::size_t>(dim * dim));
  for (const auto &c : imm.ambient().compiled_metric())
    gj.push_back(c.eval(psi, n));

  InducedConnection out;
  out.metric = Mat::Zero(n, n);
  out.dmetric.assign(static_cast<std::size_t>(n), Mat::Zero(n, n));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
    {
      const Jet2 &gij = gj[static_cast<std::size_t>(i * dim + j)];
      const Vec &di = psi[static_cast<std::size_t>(i)].gradient();
      const Vec &dj = psi[static_cast<std::size_t>(j)].gradient();
      const Mat &hi = psi[static_cast<std::size_t>(i)].hessian();
      const Mat &hj = psi[static_cast<std::size_t>(j)].hessian();
      out.metric += gij.value() * di * dj.transpose();
      for (int c = 0; c < n; ++c)
      {
        auto &d = out.dmetric[static_cast<std::size_t>(c)];
        d += gij.gradient()(c) * di * dj.transpose();
        d += gij.value() * (hi.col(c) * dj.transpose() + di * hj.col(c).transpose());
      }
    }
  out.metric = 0.5 * (out.metric + out.metric.transpose()).eval();
  for (auto &d : out.dmetric)
    d = 0.5 * (d + d.transpose()).eval();

  Eigen::LDLT<Mat> ldlt(out.metric);
  Mat inv = ldlt.solve(Mat::Identity(n, n));
  inv = 0.5 * (inv + inv.transpose()).eval();
  out.gamma = manifold::Christoffel::from_metric(inv, out.dmetric);
  return out;
}

} // namespace kv::immersion
