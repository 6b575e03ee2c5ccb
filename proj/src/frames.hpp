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

#ifndef KENVERIFY_FRAMES_HPP
#define KENVERIFY_FRAMES_HPP

#include "jet2.hpp"

#include <vector>

namespace kv::immersion {

/// Vectors attached to one ambient point together with their pairwise
/// g-inner products.
struct Frame
{
  Vec base;
  std::vector<Vec> vectors;
  Mat gram;

  std::size_t size() const { return vectors.size(); }
  Mat as_matrix() const;
};

Mat gram_matrix(const std::vector<Vec> &vectors, const Mat &metric);
Frame make_frame(Vec base, std::vector<Vec> vectors, const Mat &metric);

/// Orthonormal output together with coefficients: out[i] = sum_j in[j] * coefficients(j, i).
/// The coefficient matrix is upper triangular.
struct Orthonormalized
{
  Frame frame;
  Mat coefficients;
};

/// Modified Gram-Schmidt with respect to `metric`, in input order, with one
/// re-orthogonalization sweep. Throws GeometryError when a pivot falls below
/// 1e-10 times the input vector norm.
Orthonormalized orthonormalize_with_coefficients(const Frame &frame, const Mat &metric);
Frame orthonormalize(const Frame &frame, const Mat &metric);

/// Extends an orthonormal family with candidates (in order), skipping any whose
/// component orthogonal to the current span is below `relative_threshold` of
/// its norm, until `target` vectors have been added. Throws GeometryError if
/// the candidates run out.
std::vector<Vec> complete_orthonormal(const std::vector<Vec> &orthonormal, const std::vector<Vec> &candidates,
                                      const Mat &metric, std::size_t target, double relative_threshold = 1e-3);

/// max |gram - I|.
double orthonormality_residual(const std::vector<Vec> &vectors, const Mat &metric);

} // namespace kv::immersion

#endif // KENVERIFY_FRAMES_HPP
