/*
 * test_vector_field.cpp
 * vfield tests
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

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "vfield/vector_field.hpp"

namespace vfield {
namespace {

using test::make_rng;
using test::random_vec;

const FieldParams kDipole{2.0, {1.0, 0.0}};
const FieldParams kTangential{1.0, {1.0, 0.0}};
const FieldParams kParallel{0.0, {1.0, 0.0}};

TEST(EvalField, DipoleAtOriginAndOnAxis) {
  EXPECT_EQ(eval_field(kDipole, {0.0, 0.0}), Vec2(0.0, 0.0));
  EXPECT_EQ(eval_field(kDipole, {1.0, 0.0}), Vec2(1.0, 0.0));
}

TEST(EvalField, TangentialOnUnitCircle) { EXPECT_EQ(eval_field(kTangential, {0.0, 1.0}), Vec2(-1.0, 0.0)); }

TEST(EvalField, ParallelMemberPointsAlongMinusP) {
  for (const Vec2 r : {Vec2{3.0, 2.0}, Vec2{-1.5, 0.25}, Vec2{0.0, -4.0}}) {
    const Vec2 f = eval_field(kParallel, r);
    EXPECT_DOUBLE_EQ(f.x, -norm_sq(r));
    EXPECT_DOUBLE_EQ(f.y, 0.0);
  }
}

TEST(EvalField, MatchesVectorForm) {
  auto rng = make_rng(11);
  for (int k = 0; k < 1000; ++k) {
    const double lambda = uniform(rng, -4.0, 4.0);
    const Vec2 p = random_vec(rng, -2.0, 2.0);
    const Vec2 r = random_vec(rng, -3.0, 3.0);
    const Vec2 expect = lambda * dot(p, r) * r - p * dot(r, r);
    const Vec2 got = eval_field(FieldParams{lambda, p}, r);
    EXPECT_NEAR(got.x, expect.x, 1e-12 * (1.0 + std::abs(expect.x)));
    EXPECT_NEAR(got.y, expect.y, 1e-12 * (1.0 + std::abs(expect.y)));
  }
}

TEST(FieldParams, RejectsZeroDirection) {
  EXPECT_THROW(FieldParams(2.0, {0.0, 0.0}), ValidationError);
  EXPECT_THROW(FieldParams(std::nan(""), {1.0, 0.0}), ValidationError);
}

TEST(NormalizeAttractive, Examples) {
  EXPECT_EQ(normalize_attractive(kDipole, {0.0, 0.0}), Vec2(0.0, 0.0));
  EXPECT_EQ(normalize_attractive(kDipole, {1.0, 0.0}), Vec2(1.0, 0.0));
  const Vec2 raw = eval_field(kDipole, {0.0, 1.0});
  const Vec2 n = normalize_attractive(kDipole, {0.0, 1.0});
  EXPECT_DOUBLE_EQ(n.x, raw.x / norm(raw));
  EXPECT_DOUBLE_EQ(n.y, raw.y / norm(raw));
  EXPECT_EQ(n, Vec2(-1.0, 0.0));
}

TEST(NormalizeAttractive, RejectsOtherMembers) { EXPECT_THROW(normalize_attractive(kTangential, {1.0, 1.0}), DomainError); }

TEST(NormalizeAttractive, UnitAwayFromSingularity) {
  auto rng = make_rng(12);
  for (int k = 0; k < 1000; ++k) {
    const Vec2 r = random_vec(rng, -5.0, 5.0);
    EXPECT_NEAR(norm(normalize_attractive(kDipole, r)), 1.0, 1e-14);
  }
}

TEST(NormalizeOrZero, SingularBand) {
  EXPECT_EQ(normalize_or_zero({1e-13, 0.0}), Vec2(0.0, 0.0));
  EXPECT_NEAR(norm(normalize_or_zero({1e-11, 0.0})), 1.0, 1e-15);
}

TEST(FieldDeterminant, Examples) {
  const Vec2 r{0.3, -1.7};
  EXPECT_NEAR(field_determinant(kTangential, r), 0.0, 1e-15 * std::pow(norm_sq(r), 2));
  EXPECT_DOUBLE_EQ(field_determinant(kDipole, {1.0, 0.0}), -1.0);
  const FieldMatrix a = field_matrix(0.0, {1.0, 1.0});
  EXPECT_DOUBLE_EQ(a.a11 * a.a22 - a.a12 * a.a21, 4.0);
  EXPECT_DOUBLE_EQ(field_determinant(kParallel, {1.0, 1.0}), 4.0);
}

TEST(FieldMatrix, AppliedToPGivesField) {
  auto rng = make_rng(13);
  for (int k = 0; k < 500; ++k) {
    const double lambda = uniform(rng, -3.0, 3.0);
    const Vec2 p = random_vec(rng, -1.0, 1.0);
    const Vec2 r = random_vec(rng, -2.0, 2.0);
    const Vec2 a = field_matrix(lambda, r).apply(p);
    const Vec2 f = eval_field(FieldParams{lambda, p}, r);
    EXPECT_NEAR(a.x, f.x, 1e-12);
    EXPECT_NEAR(a.y, f.y, 1e-12);
  }
}

TEST(ReflectAbout, Examples) {
  const Vec2 a = reflect_about({1.0, 0.0}, {0.0, 1.0});
  EXPECT_NEAR(a.x, 0.0, 1e-15);
  EXPECT_NEAR(a.y, -1.0, 1e-15);
  const Vec2 b = reflect_about({0.0, 1.0}, {1.0, 0.0});
  EXPECT_NEAR(b.x, -1.0, 1e-15);
  EXPECT_NEAR(b.y, 0.0, 1e-15);
  // H(pi/2) = [0 1; 1 0]
  const Vec2 c = reflect_about({1.0, 1.0}, {1.0, 0.0});
  EXPECT_NEAR(c.x, 0.0, 1e-15);
  EXPECT_NEAR(c.y, 1.0, 1e-15);
  EXPECT_THROW(reflect_about({0.0, 0.0}, {1.0, 0.0}), DomainError);
}

TEST(ReflectAbout, IsAnInvolutionFixingP) {
  auto rng = make_rng(14);
  for (int k = 0; k < 500; ++k) {
    const Vec2 p = random_vec(rng, -1.0, 1.0);
    const Vec2 v = random_vec(rng, -3.0, 3.0);
    const Vec2 twice = reflect_about(p, reflect_about(p, v));
    EXPECT_NEAR(twice.x, v.x, 1e-12);
    EXPECT_NEAR(twice.y, v.y, 1e-12);
    const Vec2 fixed = reflect_about(p, p);
    EXPECT_NEAR(fixed.x, p.x, 1e-12);
    EXPECT_NEAR(fixed.y, p.y, 1e-12);
  }
}

TEST(IntegralCurveInvariant, Examples) {
  // Literal value at lambda = 0 is 1 / y^-1 = y.
  EXPECT_DOUBLE_EQ(integral_curve_invariant(0.0, {3.0, 2.0}), 2.0);
  EXPECT_DOUBLE_EQ(integral_curve_invariant(0.0, {-7.0, 2.0}), 2.0);
  EXPECT_DOUBLE_EQ(integral_curve_invariant(1.0, {3.0, 4.0}), 5.0);
  EXPECT_DOUBLE_EQ(integral_curve_invariant(2.0, {0.0, 2.0}), 2.0);
}

TEST(IntegralCurveInvariant, UndefinedOnSeparatrix) {
  EXPECT_THROW(integral_curve_invariant(2.0, {1.0, 0.0}), DomainError);
  EXPECT_THROW(integral_curve_invariant(0.5, {-1.0, 0.0}), DomainError);
  EXPECT_THROW(integral_curve_invariant(0.5, {1.0, -1.0}), DomainError);
  EXPECT_NO_THROW(integral_curve_invariant(1.0, {1.0, 0.0}));
  EXPECT_NO_THROW(integral_curve_invariant(3.0, {1.0, -1.0}));
}

TEST(IntegralCurveInvariant, ConstantAlongLambdaZeroLines) {
  for (double x : {-5.0, -1.0, 0.0, 2.5, 10.0}) EXPECT_DOUBLE_EQ(integral_curve_invariant(0.0, {x, 2.0}), 2.0);
}

TEST(IntegralCurveInvariant, ConservedByRk4FromDipoleExample) {
  const auto f = [](const Vec2& r) { return eval_field(kDipole, r); };
  Vec2 r{0.0, 2.0};
  const double c0 = integral_curve_invariant(2.0, r);
  for (int k = 0; k < 1000; ++k) r = test::rk4(f, r, 1e-3);
  EXPECT_LT(test::rel_err(integral_curve_invariant(2.0, r), c0), 1e-10);
}

class InvariantConservation : public ::testing::TestWithParam<double> {};

TEST_P(InvariantConservation, DriftBelowTolerance) {
  const double lambda = GetParam();
  const FieldParams params{lambda, {1.0, 0.0}};
  const auto f = [&](const Vec2& r) { return eval_field(params, r); };
  auto rng = make_rng(100 + static_cast<std::uint64_t>(lambda * 10));
  for (int trial = 0; trial < 20; ++trial) {
    Vec2 r{uniform(rng, -1.0, 1.0), uniform(rng, 0.2, 1.0)};
    const double c0 = integral_curve_invariant(lambda, r);
    for (int k = 0; k < 1000; ++k) r = test::rk4(f, r, 1e-3);
    ASSERT_GT(r.y, 0.0);
    EXPECT_LT(test::rel_err(integral_curve_invariant(lambda, r), c0), 1e-4) << "lambda " << lambda;
  }
}

INSTANTIATE_TEST_SUITE_P(Lambdas, InvariantConservation, ::testing::Values(0.5, 2.0, 3.0));

TEST(TangentialField, TrajectoriesAreCircles) {
  const auto f = [](const Vec2& r) { return eval_field(kTangential, r); };
  auto rng = make_rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    Vec2 r = random_vec(rng, -1.0, 1.0);
    const double r0 = norm(r);
    for (int k = 0; k < 1000; ++k) r = test::rk4(f, r, 1e-3);
    EXPECT_LT(test::rel_err(norm(r), r0), 1e-4);
  }
}

TEST(Singularity, UniqueForLambdaNotOne) {
  auto rng = make_rng(16);
  for (int k = 0; k < 10000; ++k) {
    double lambda = uniform(rng, -5.0, 5.0);
    if (std::abs(lambda - 1.0) < 1e-3) lambda += 0.5;
    const FieldParams params{lambda, random_vec(rng, -1.0, 1.0)};
    const Vec2 r = random_vec(rng, -2.0, 2.0);
    ASSERT_GT(norm(eval_field(params, r)), 0.0);
    ASSERT_EQ(eval_field(params, {0.0, 0.0}), Vec2(0.0, 0.0));
  }
}

TEST(Singularity, TangentialVanishesOnPAxis) {
  const FieldParams params{1.0, {0.6, 0.8}};
  for (double s : {-2.0, -0.5, 0.3, 4.0}) {
    const Vec2 f = eval_field(params, params.p * s);
    EXPECT_NEAR(norm(f), 0.0, 1e-14);
  }
}

TEST(Determinant, MatchesClosedForm) {
  auto rng = make_rng(17);
  for (int k = 0; k < 10000; ++k) {
    const double lambda = uniform(rng, -5.0, 5.0);
    const Vec2 r = random_vec(rng, -3.0, 3.0);
    const double closed = -(lambda - 1.0) * std::pow(norm_sq(r), 2);
    const double det = field_determinant(FieldParams{lambda, {1.0, 0.0}}, r);
    EXPECT_LE(std::abs(det - closed), 1e-12 * std::max(1.0, std::abs(closed)));
  }
}

TEST(Reflection, FieldCommutesWithMirror) {
  auto rng = make_rng(18);
  for (int k = 0; k < 10000; ++k) {
    const FieldParams params{uniform(rng, -5.0, 5.0), random_vec(rng, -1.0, 1.0)};
    const Vec2 r = random_vec(rng, -2.0, 2.0);
    const Vec2 lhs = eval_field(params, reflect_about(params.p, r));
    const Vec2 rhs = reflect_about(params.p, eval_field(params, r));
    EXPECT_NEAR(lhs.x, rhs.x, 1e-10);
    EXPECT_NEAR(lhs.y, rhs.y, 1e-10);
  }
}

TEST(Homogeneity, QuadraticInR) {
  auto rng = make_rng(19);
  for (int k = 0; k < 1000; ++k) {
    const FieldParams params{uniform(rng, -3.0, 3.0), random_vec(rng, -1.0, 1.0)};
    const Vec2 r = random_vec(rng, -2.0, 2.0);
    const double s = uniform(rng, -3.0, 3.0);
    const Vec2 a = eval_field(params, r * s);
    const Vec2 b = eval_field(params, r) * (s * s);
    EXPECT_NEAR(a.x, b.x, 1e-12 * (1.0 + std::abs(b.x)));
    EXPECT_NEAR(a.y, b.y, 1e-12 * (1.0 + std::abs(b.y)));
  }
}

TEST(GoalFrame, HeadingWrappedAndRoundTrip) {
  const GoalFrame g({1.0, -2.0}, 3.0 * kPi);
  EXPECT_NEAR(g.heading(), kPi, 1e-12);
  EXPECT_DOUBLE_EQ(GoalFrame({0, 0}, -kPi).heading(), kPi);
  const Vec2 local = g.to_local({2.0, -2.0});
  EXPECT_NEAR(local.x, -1.0, 1e-12);
  EXPECT_NEAR(local.y, 0.0, 1e-12);
}

TEST(AttractiveUnit, SeparatrixPointsAlongGoalHeading) {
  const GoalFrame g({0.5, 0.5}, kPi / 2);
  const Vec2 behind = attractive_unit(g, {0.5, -1.0});
  EXPECT_NEAR(behind.x, 0.0, 1e-12);
  EXPECT_NEAR(behind.y, 1.0, 1e-12);
  EXPECT_EQ(attractive_unit(g, g.position()), Vec2(0.0, 0.0));
}

TEST(WrapAngle, HalfOpenInterval) {
  EXPECT_DOUBLE_EQ(wrap_angle(kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_angle(-kPi), kPi);
  EXPECT_NEAR(wrap_angle(5.0 * kPi / 2), kPi / 2, 1e-12);
  EXPECT_NEAR(wrap_angle(-0.1), -0.1, 1e-15);
}

}  // namespace
}  // namespace vfield
