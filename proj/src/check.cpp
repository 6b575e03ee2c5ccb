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

#include "check.hpp"

#include <algorithm>
#include <cmath>

namespace kv {

double CheckRecord::value(std::string_view name, double fallback) const
{
  for (const auto &[k, v] : values)
    if (k == name)
      return v;
  return fallback;
}

namespace {

const std::map<std::string, ToleranceInfo, std::less<>> &tolerance_table()
{
  static const std::map<std::string, ToleranceInfo, std::less<>> table = {
    {"almost_contact", {1e-10, true}},
    {"metric_positive_definite", {0.0, false}},
    {"christoffel_compatibility", {1e-10, true}},
    {"kenmotsu_nabla_phi", {1e-8, true}},
    {"kenmotsu_nabla_xi", {1e-8, true}},
    {"immersion_rank", {1e-8, false}},
    {"h_symmetry", {1e-10, true}},
    {"h_normality", {1e-10, true}},
    {"weingarten_duality", {1e-10, true}},
    {"shape_self_adjoint", {1e-10, true}},
    {"h_xi_vanishing", {1e-10, true}},
    {"gauss_intrinsic_consistency", {1e-9, true}},
    {"split_orthogonality", {1e-9, true}},
    {"xi_alignment", {1e-8, true}},
    {"pf_reconstruction", {1e-10, true}},
    {"tf_reconstruction", {1e-10, true}},
    {"p_skew_adjoint", {1e-10, true}},
    {"invariant_distribution", {1e-10, true}},
    {"slant_constancy", {1e-6, false}},
    {"slant_angle_declared", {1e-6, false}},
    {"invariant_lambda_fit", {1e-9, true}},
    {"slant_lambda_fit", {1e-9, true}},
    {"slant_tangential_norm", {1e-9, true}},
    {"slant_normal_norm", {1e-9, true}},
    {"slant_tf_identity", {1e-9, true}},
    {"invariant_leaf_connection_identity", {1e-8, true}},
    {"slant_leaf_connection_identity", {1e-8, true}},
    {"slant_bracket_identity", {1e-8, true}},
    {"invariant_leaf_geodesic", {1e-8, true}},
    {"invariant_leaf_geodesic_shape", {1e-8, true}},
    {"slant_leaf_geodesic_condition", {0.1, false}},
    {"invariant_integrability", {1e-10, true}},
    {"slant_integrability", {1e-10, true}},
    {"warping_positive", {0.0, false}},
    {"block_metric_cross", {1e-10, true}},
    {"block_metric_quotient", {1e-9, true}},
    {"warp_connection", {1e-9, true}},
    {"warp_gradient_norm", {0.0, false}},
    {"xi_warp_derivative", {1e-9, true}},
    {"h_factor2_xi", {1e-10, true}},
    {"xi_case1_trivial", {1e-9, true}},
    {"mixed_h_identity_base", {1e-8, true}},
    {"mixed_h_identity_phix", {1e-8, true}},
    {"mixed_h_identity_pz", {1e-8, true}},
    {"mixed_h_identity_pw", {1e-8, true}},
    {"mixed_h_identity_pz_pw", {1e-8, true}},
    {"invariant_h_orthogonal_fd", {1e-8, true}},
    {"mixed_h_antisymmetry", {1e-8, true}},
    {"warp_characterization", {1e-8, true}},
    {"warp_characterization_slant_gradient", {1e-10, true}},
    {"warp_mu_fit", {1e-8, true}},
    {"adapted_frames_orthonormal", {1e-9, true}},
    {"h_norm_lower_bound", {1e-9, true}},
    {"h_norm_partial_sums", {1e-9, true}},
    {"h_norm_frame_invariance", {1e-9, true}},
    {"equality_h_invariant", {1e-9, true}},
    {"equality_h_slant", {1e-9, true}},
    {"equality_h_mixed_normal", {1e-9, true}},
    {"slant_leaf_umbilicity", {1e-8, true}},
    {"equality_margin_consistency", {1e-6, true}},
    {"mean_curvature_norm", {1e-9, true}},
    {"cr_shape_operator_identity", {1e-8, true}},
    {"cr_h_norm_lower_bound", {1e-9, true}},
    {"cr_slant_echo", {1e-10, true}},
    {"fd_christoffel", {1e-5, true}},
    {"fd_second_fundamental_form", {1e-5, true}},
  };
  return table;
}

} // namespace

bool is_known_check(std::string_view id) { return tolerance_table().count(id) > 0; }

ToleranceInfo default_tolerance(std::string_view id)
{
  const auto &table = tolerance_table();
  auto it = table.find(id);
  if (it == table.end())
    return {1e-9, true};
  return it->second;
}

double Tolerances::get(std::string_view id) const
{
  const auto info = default_tolerance(id);
  auto it = overrides.find(std::string(id));
  const double base = it != overrides.end() ? it->second : info.value;
  return info.scaled ? base * scale : base;
}

void Accumulator::add(double residual, const Vec &at)
{
  ++count_;
  if (!std::isfinite(residual))
  {
    finite_ = false;
    worst_ = at;
    return;
  }
  sum_ += residual;
  if (count_ == 1 || residual > max_)
  {
    max_ = residual;
    worst_ = at;
  }
}

CheckRecord Accumulator::finish(std::string id, std::string anchor, std::string group, double tolerance,
                                std::uint64_t seed) const
{
  CheckRecord r;
  r.id = std::move(id);
  r.anchor = std::move(anchor);
  r.group = std::move(group);
  r.max_residual = finite_ ? max_ : std::numeric_limits<double>::infinity();
  r.mean_residual = count_ ? sum_ / static_cast<double>(count_) : 0.0;
  r.tolerance = tolerance;
  r.pass = finite_ && count_ > 0 && max_ <= tolerance;
  r.samples = count_;
  r.seed = seed;
  r.worst_point.assign(worst_.data(), worst_.data() + worst_.size());
  if (count_ == 0)
    r.note = "no samples";
  return r;
}

CheckRecord skipped_record(std::string id, std::string anchor, std::string group, std::string reason)
{
  CheckRecord r;
  r.id = std::move(id);
  r.anchor = std::move(anchor);
  r.group = std::move(group);
  r.skipped = true;
  r.note = std::move(reason);
  return r;
}

std::uint64_t stream_seed(std::uint64_t seed, std::string_view label)
{
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : label)
  {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h ^ (seed * 0x9E3779B97F4A7C15ull);
}

Vec random_coefficients(Rng &rng, const std::vector<int> &indices, int n)
{
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec c = Vec::Zero(n);
  for (int i : indices)
    c(i) = normal(rng);
  return c;
}

} // namespace kv
