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

#ifndef KENVERIFY_JET2_HPP
#define KENVERIFY_JET2_HPP

#include <Eigen/Dense>

namespace kv {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Second-order truncated Taylor jet: value, gradient and Hessian with respect
/// to n chart variables.
///
/// Every operation updates the Hessian with expressions whose (i,j) and (j,i)
/// entries are the same floating-point sums, so a jet seeded with a symmetric
/// Hessian stays exactly symmetric.
class Jet2
{
public:
  Jet2() : value_(0.0) {}

  static Jet2 constant(double value, Index n)
  {
    Jet2 j;
    j.value_ = value;
    j.gradient_ = Vec::Zero(n);
    j.hessian_ = Mat::Zero(n, n);
    return j;
  }

  /// Seed for the i-th chart variable: gradient e_i, zero Hessian.
  static Jet2 variable(double value, Index n, Index i)
  {
    Jet2 j = constant(value, n);
    j.gradient_(i) = 1.0;
    return j;
  }

  static Jet2 from_parts(double value, Vec gradient, Mat hessian)
  {
    Jet2 j;
    j.value_ = value;
    j.gradient_ = std::move(gradient);
    j.hessian_ = std::move(hessian);
    return j;
  }

  double value() const noexcept { return value_; }
  const Vec &gradient() const noexcept { return gradient_; }
  const Mat &hessian() const noexcept { return hessian_; }
  Index size() const noexcept { return gradient_.size(); }

  bool is_constant() const { return gradient_.isZero(0.0) && hessian_.isZero(0.0); }

  /// f(a) given f(a0), f'(a0), f''(a0).
  Jet2 chain(double f, double df, double d2f) const
  {
    Jet2 r;
    r.value_ = f;
    r.gradient_ = df * gradient_;
    r.hessian_ = df * hessian_ + d2f * (gradient_ * gradient_.transpose());
    return r;
  }

  /// F(a, b) from its value and partial derivatives up to order two.
  static Jet2 chain2(const Jet2 &a, const Jet2 &b, double f, double fa, double fb, double faa, double fab,
                     double fbb)
  {
    Jet2 r;
    r.value_ = f;
    r.gradient_ = fa * a.gradient_ + fb * b.gradient_;
    const Mat cross = a.gradient_ * b.gradient_.transpose();
    r.hessian_ = fa * a.hessian_ + fb * b.hessian_ + faa * (a.gradient_ * a.gradient_.transpose()) +
                 fab * (cross + cross.transpose()) + fbb * (b.gradient_ * b.gradient_.transpose());
    return r;
  }

  Jet2 operator-() const { return from_parts(-value_, -gradient_, -hessian_); }

  friend Jet2 operator+(const Jet2 &a, const Jet2 &b)
  {
    return from_parts(a.value_ + b.value_, a.gradient_ + b.gradient_, a.hessian_ + b.hessian_);
  }

  friend Jet2 operator-(const Jet2 &a, const Jet2 &b)
  {
    return from_parts(a.value_ - b.value_, a.gradient_ - b.gradient_, a.hessian_ - b.hessian_);
  }

  friend Jet2 operator*(const Jet2 &a, const Jet2 &b)
  {
    const Mat cross = a.gradient_ * b.gradient_.transpose();
    return from_parts(a.value_ * b.value_, b.value_ * a.gradient_ + a.value_ * b.gradient_,
                      b.value_ * a.hessian_ + a.value_ * b.hessian_ + (cross + cross.transpose()));
  }

  friend Jet2 operator*(double s, const Jet2 &a) { return from_parts(s * a.value_, s * a.gradient_, s * a.hessian_); }

  /// Caller guarantees b.value() != 0.
  friend Jet2 operator/(const Jet2 &a, const Jet2 &b)
  {
    const double x = b.value_;
    return a * b.chain(1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x));
  }

private:
  double value_;
  Vec gradient_;
  Mat hessian_;
};

} // namespace kv

#endif // KENVERIFY_JET2_HPP
