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

#include "frames.hpp"

#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kv::immersion {

Mat Frame::as_matrix() const
{
  if (vectors.empty())
    return Mat(base.size(), 0);
  Mat m(vectors.front().size(), static_cast<Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i)
    m.col(static_cast<Index>(i)) = vectors[i];
  return m;
}

Mat gram_matrix(const std::vector<Vec> &vectors, const Mat &metric)
{
  const auto n = static_cast<Index>(vectors.size());
  Mat g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j)
    {
      g(i, j) = vectors[static_cast<std::size_t>(i)].dot(metric * vectors[static_cast<std::size_t>(j)]);
      g(j, i) = g(i, j);
    }
  return g;
}

Frame make_frame(Vec base, std::vector<Vec> vectors, const Mat &metric)
{
  Frame f;
  f.base = std::move(base);
  f.gram = gram_matrix(vectors, metric);
  f.vectors = std::move(vectors);
  return f;
}

Orthonormalized orthonormalize_with_coefficients(const Frame &frame, const Mat &metric)
{
  const auto n = static_cast<Index>(frame.vectors.size());
  Orthonormalized out;
  out.coefficients = Mat::Zero(n, n);
  std::vector<Vec> basis;
  basis.reserve(frame.vectors.size());
  for (Index i = 0; i < n; ++i)
  {
    const Vec &input = frame.vectors[static_cast<std::size_t>(i)];
    const double input_norm = std::sqrt(std::max(0.0, input.dot(metric * input)));
    Vec v = input;
    Vec c = Vec::Zero(n);
    c(i) = 1.0;
    for (int sweep = 0; sweep < 2; ++sweep)
      for (Index j = 0; j < i; ++j)
      {
        const Vec &e = basis[static_cast<std::size_t>(j)];
        const double proj = e.dot(metric * v);
        v -= proj * e;
        c -= proj * out.coefficients.col(j);
      }
    const double pivot = std::sqrt(std::max(0.0, v.dot(metric * v)));
    if (!(pivot > 1e-10 * input_norm) || pivot == 0.0)
      throw GeometryError("linearly dependent frame: vector " + std::to_string(i) + " has pivot norm " +
                          std::to_string(pivot));
    basis.push_back(v / pivot);
    out.coefficients.col(i) = c / pivot;
  }
  out.frame = make_frame(frame.base, std::move(basis), metric);
  return out;
}

Frame orthonormalize(const Frame &frame, const Mat &metric)
{
  return orthonormalize_with_coefficients(frame, metric).frame;
}

std::vector<Vec> complete_orthonormal(const std::vector<Vec> &orthonormal, const std::vector<Vec> &candidates,
                                      const Mat &metric, std::size_t target, double relative_threshold)
{
  std::vector<Vec> span = orthonormal;
  std::vector<Vec> added;
  for (const Vec &cand : candidates)
  {
    if (added.size() == target)
      break;
    const double norm = std::sqrt(std::max(0.0, cand.dot(metric * cand)));
    if (norm == 0.0)
      continue;
    Vec v = cand;
    for (int sweep = 0; sweep < 2; ++sweep)
      for (const Vec &e : span)
        v -= e.dot(metric * v) * e;
    const double pivot = std::sqrt(std::max(0.0, v.dot(metric * v)));
    if (pivot < relative_threshold * norm)
      continue;
    v /= pivot;
    span.push_back(v);
    added.push_back(v);
  }
  if (added.size() != target)
    throw GeometryError("could not complete orthonormal frame: found " + std::to_string(added.size()) + " of " +
                        std::to_string(target) + " vectors");
  return added;
}

double orthonormality_residual(const std::vector<Vec> &vectors, const Mat &metric)
{
  if (vectors.empty())
    return 0.0;
  const Mat g = gram_matrix(vectors, metric);
  return (g - Mat::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

} // namespace kv::immersion
