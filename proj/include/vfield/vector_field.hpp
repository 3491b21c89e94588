/*
 * vector_field.hpp
 * vfield library
 *
 * Copyright 2026 The vfield Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef VFIELD_VECTOR_FIELD_HPP_
#define VFIELD_VECTOR_FIELD_HPP_

#include <cmath>
#include <string>

#include "vfield/errors.hpp"
#include "vfield/vec2.hpp"

/**
 * The quadratic planar field family
 *
 *   F(r) = lambda (p.r) r - p (r.r)
 *
 * and the facts about it that the planners rely on. lambda = 2 gives the
 * dipole used to attract towards a goal, lambda = 1 the tangential field
 * used around obstacles and lambda = 0 a field co-linear with -p.
 */
namespace vfield {

/// Squared-norm band under which a field value counts as singular.
inline constexpr double kSingularNormSq = 1e-24;

inline constexpr double kAttractiveLambda = 2.0;
inline constexpr double kTangentialLambda = 1.0;
inline constexpr double kParallelLambda = 0.0;

/// Selects one member of the family. p must be non-zero.
struct FieldParams {
  double lambda = kAttractiveLambda;
  Vec2 p{1.0, 0.0};

  FieldParams() = default;
  FieldParams(double lambda_, Vec2 p_) : lambda(lambda_), p(p_) {
    if (!std::isfinite(lambda) || !is_finite(p)) {
      throw ValidationError("field params: lambda and p must be finite");
    }
    if (norm_sq(p) <= 0.0) throw ValidationError("field params: p must be non-zero");
  }
};

/// Goal configuration. Heading is kept in (-pi, pi].
class GoalFrame {
 public:
  GoalFrame() = default;
  GoalFrame(Vec2 position, double heading) : position_(position), heading_(wrap_angle(heading)) {
    if (!is_finite(position) || !std::isfinite(heading)) {
      throw ValidationError("goal: position and heading must be finite");
    }
  }

  const Vec2& position() const { return position_; }
  double heading() const { return heading_; }

  /// World point into the frame where the goal is the origin and p_g = [1 0].
  Vec2 to_local(const Vec2& r) const { return rotate(r - position_, -heading_); }
  /// Local direction back into world axes.
  Vec2 direction_to_world(const Vec2& v) const { return rotate(v, heading_); }

 private:
  Vec2 position_{};
  double heading_ = 0.0;
};

/// The matrix A(lambda, r) with F = A p.
struct FieldMatrix {
  double a11, a12, a21, a22;

  double determinant() const { return a11 * a22 - a12 * a21; }
  Vec2 apply(const Vec2& v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
};

inline FieldMatrix field_matrix(double lambda, const Vec2& r) {
  const double xx = r.x * r.x;
  const double yy = r.y * r.y;
  const double xy = r.x * r.y;
  return {(lambda - 1.0) * xx - yy, lambda * xy, lambda * xy, (lambda - 1.0) * yy - xx};
}

/// Componentwise evaluation of F at r.
inline Vec2 eval_field(const FieldParams& params, const Vec2& r) {
  const double l = params.lambda;
  const double px = params.p.x;
  const double py = params.p.y;
  const double x = r.x;
  const double y = r.y;
  return {(l - 1.0) * px * x * x + l * py * x * y - px * y * y,
          (l - 1.0) * py * y * y + l * px * x * y - py * x * x};
}

/// det A(lambda, r). Closed form is -(lambda - 1)(x^2 + y^2)^2.
inline double field_determinant(const FieldParams& params, const Vec2& r) {
  return field_matrix(params.lambda, r).determinant();
}

/// Unit vector along v, or exactly zero inside the singular band.
inline Vec2 normalize_or_zero(const Vec2& v) {
  const double n2 = norm_sq(v);
  if (!(n2 >= kSingularNormSq)) return {};
  return v * (1.0 / std::sqrt(n2));
}

/// Normalized attractive field. Requires the lambda = 2 member.
inline Vec2 normalize_attractive(const FieldParams& params, const Vec2& r) {
  if (params.lambda != kAttractiveLambda) {
    throw DomainError("normalize_attractive: lambda must be 2, got " + std::to_string(params.lambda));
  }
  return normalize_or_zero(eval_field(params, r));
}

/// Normalized dipole towards a goal configuration, evaluated in the goal
/// frame and rotated back into world axes. Zero at the goal.
inline Vec2 attractive_unit(const GoalFrame& goal, const Vec2& r) {
  static const FieldParams kDipole{kAttractiveLambda, {1.0, 0.0}};
  const Vec2 local = normalize_or_zero(eval_field(kDipole, goal.to_local(r)));
  return goal.direction_to_world(local);
}

/// Reflection of v about the line through the origin along p.
inline Vec2 reflect_about(const Vec2& p, const Vec2& v) {
  if (!(norm_sq(p) > 0.0)) throw DomainError("reflect_about: p must be non-zero");
  const double two_phi = 2.0 * std::atan2(p.y, p.x);
  const double c = std::cos(two_phi);
  const double s = std::sin(two_phi);
  return {c * v.x + s * v.y, s * v.x - c * v.y};
}

/**
 * Constant of the integral curve through r, for p = [1 0]:
 *
 *   c = (x^2 + y^2)^(lambda/2) / y^(lambda - 1)
 *
 * Evaluated literally. At lambda = 0 this is c = y (curves are the lines
 * y = const); at lambda = 1 it is c = |r| (circles about the origin).
 * Undefined on the separatrix y = 0 unless lambda is 0 or 1, and for y < 0
 * when lambda - 1 is not an integer.
 */
inline double integral_curve_invariant(double lambda, const Vec2& r) {
  const double exponent = lambda - 1.0;
  if (r.y == 0.0 && lambda != 0.0 && lambda != 1.0) {
    throw DomainError("integral_curve_invariant: y = 0 lies on the separatrix");
  }
  if (r.y < 0.0 && exponent != std::floor(exponent)) {
    throw DomainError("integral_curve_invariant: y < 0 with non-integer lambda - 1");
  }
  const double radial = std::pow(norm_sq(r), 0.5 * lambda);
  if (lambda == 1.0) return radial;
  return radial / std::pow(r.y, exponent);
}

}  // namespace vfield

#endif  // VFIELD_VECTOR_FIELD_HPP_
