/*
 * blending.hpp
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

#ifndef VFIELD_BLENDING_HPP_
#define VFIELD_BLENDING_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vfield/errors.hpp"
#include "vfield/vec2.hpp"
#include "vfield/vector_field.hpp"

namespace vfield {

/// Closed disk obstacle.
struct Obstacle {
  Vec2 center{};
  double radius = 0.0;
};

/// rho_o^2 - |r - c|^2: positive inside, zero on the boundary, negative outside.
inline double beta(const Obstacle& ob, const Vec2& r) {
  return ob.radius * ob.radius - norm_sq(r - ob.center);
}

/// Coefficients of a cubic s(v) = a v^3 + b v^2 + c v + d.
struct Cubic {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  double operator()(double v) const { return ((a * v + b) * v + c) * v + d; }
  double derivative(double v) const { return (3.0 * a * v + 2.0 * b) * v + c; }
};

/// Cubic with s(zero_knot) = 0, s(one_knot) = 1 and flat ends.
inline Cubic smoothstep_cubic(double zero_knot, double one_knot) {
  const double z = zero_knot;
  const double f = one_knot;
  const double den = std::pow(z - f, 3);
  return {2.0 / den, -3.0 * (z + f) / den, 6.0 * z * f / den, z * z * (z - 3.0 * f) / den};
}

/// Cubic in beta with s(beta_F) = 1, s(beta_Z) = 0 and flat ends.
inline Cubic static_bump_cubic(double beta_z, double beta_f) { return smoothstep_cubic(beta_z, beta_f); }

/**
 * An obstacle together with the zones derived from it for one goal.
 *
 *   rho_Z = rho_o + rho + rho_eps   inner zone, purely repulsive flow
 *   rho_F > rho_Z                   outer edge of the blending annulus
 *
 * p points from the goal towards the obstacle centre, so the zero set of
 * the tangential field lies on the obstacle-goal line.
 */
class ObstacleZones {
 public:
  ObstacleZones(const Obstacle& obstacle, const GoalFrame& goal, double rho_robot, double rho_eps,
                std::optional<double> rho_f = std::nullopt)
      : obstacle_(obstacle), rho_robot_(rho_robot), rho_eps_(rho_eps) {
    if (!(obstacle.radius > 0.0) || !std::isfinite(obstacle.radius) || !is_finite(obstacle.center)) {
      throw ValidationError("obstacle: radius must be positive and finite");
    }
    if (!(rho_robot >= 0.0) || !(rho_eps >= 0.0)) {
      throw ValidationError("obstacle: robot radius and rho_eps must be non-negative");
    }
    rho_z_ = obstacle.radius + rho_robot + rho_eps;
    rho_f_ = rho_f.value_or(rho_z_ + 0.5 * (rho_robot + rho_eps));
    if (!(rho_f_ > rho_z_) || !std::isfinite(rho_f_)) {
      throw ValidationError("obstacle: rho_F must exceed rho_Z = " + std::to_string(rho_z_));
    }
    const double r2 = obstacle.radius * obstacle.radius;
    beta_z_ = r2 - rho_z_ * rho_z_;
    beta_f_ = r2 - rho_f_ * rho_f_;
    bump_ = static_bump_cubic(beta_z_, beta_f_);

    const Vec2 local = goal.to_local(obstacle.center);
    const double phi = wrap_angle(std::atan2(-local.y, -local.x) + kPi);
    p_ = goal.direction_to_world(unit_from_angle(phi));
  }

  const Obstacle& obstacle() const { return obstacle_; }
  double rho_robot() const { return rho_robot_; }
  double rho_eps() const { return rho_eps_; }
  double rho_z() const { return rho_z_; }
  double rho_f() const { return rho_f_; }
  double beta_z() const { return beta_z_; }
  double beta_f() const { return beta_f_; }
  const Vec2& p() const { return p_; }
  const Cubic& bump_coeffs() const { return bump_; }

  /// Bump weight as a function of the obstacle function value.
  double sigma_of_beta(double b) const {
    if (b <= beta_f_) return 1.0;
    if (b >= beta_z_) return 0.0;
    return std::clamp(bump_(b), 0.0, 1.0);
  }

 private:
  Obstacle obstacle_;
  double rho_robot_;
  double rho_eps_;
  double rho_z_ = 0.0;
  double rho_f_ = 0.0;
  double beta_z_ = 0.0;
  double beta_f_ = 0.0;
  Cubic bump_{};
  Vec2 p_{};
};

inline double bump_sigma(const ObstacleZones& zones, const Vec2& r) {
  return zones.sigma_of_beta(beta(zones.obstacle(), r));
}

/// Tangential (lambda = 1) on the far side of the obstacle, co-linear with
/// -p (lambda = 0) on the goal side. The branches agree on the split line.
inline Vec2 repulsive_field(const ObstacleZones& zones, const Vec2& r) {
  const Vec2 dr = r - zones.obstacle().center;
  const double lambda = dot(zones.p(), dr) >= 0.0 ? kTangentialLambda : kParallelLambda;
  return eval_field(FieldParams{lambda, zones.p()}, dr);
}

/// Unit repulsive field; zero on the singular ray and at the centre.
inline Vec2 repulsive_normalized(const ObstacleZones& zones, const Vec2& r) {
  return normalize_or_zero(repulsive_field(zones, r));
}

/// sigma F_g + (1 - sigma) F_o for a single obstacle.
inline Vec2 blend_single(const ObstacleZones& zones, const GoalFrame& goal, const Vec2& r) {
  const double s = bump_sigma(zones, r);
  return s * attractive_unit(goal, r) + (1.0 - s) * repulsive_normalized(zones, r);
}

/// weight * attractive + repulsive. Shared by the static and multi-agent
/// planners so that an agent with no neighbours evaluates bit-identically to
/// a robot in an empty world.
inline Vec2 compose_plan(const Vec2& attractive, double weight, const Vec2& repulsive_sum) {
  return attractive * weight + repulsive_sum;
}

/// Goal plus non-overlapping circular obstacles.
class StaticWorld {
 public:
  struct ObstacleSpec {
    Obstacle obstacle;
    std::optional<double> rho_f;
  };

  StaticWorld(GoalFrame goal, double robot_radius, double rho_eps, const std::vector<ObstacleSpec>& obstacles)
      : goal_(goal), robot_radius_(robot_radius), rho_eps_(rho_eps) {
    zones_.reserve(obstacles.size());
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
      try {
        zones_.emplace_back(obstacles[i].obstacle, goal_, robot_radius, rho_eps, obstacles[i].rho_f);
      } catch (const ValidationError& e) {
        throw ValidationError(std::string(e.what()) + " (obstacle " + std::to_string(i) + ")");
      }
    }
    for (std::size_t i = 0; i < zones_.size(); ++i) {
      for (std::size_t j = i + 1; j < zones_.size(); ++j) {
        const double dij = norm(zones_[i].obstacle().center - zones_[j].obstacle().center);
        if (dij < zones_[i].rho_z() + zones_[j].rho_z()) {
          throw ValidationError("clearance: obstacles " + std::to_string(i) + "," + std::to_string(j));
        }
      }
      if (norm(goal_.position() - zones_[i].obstacle().center) < zones_[i].rho_f()) {
        throw ValidationError("goal: inside the zone of obstacle " + std::to_string(i));
      }
    }
  }

  const GoalFrame& goal() const { return goal_; }
  double robot_radius() const { return robot_radius_; }
  double rho_eps() const { return rho_eps_; }
  const std::vector<ObstacleZones>& obstacles() const { return zones_; }

  /// min_i |r - c_i| - rho_oi - rho. +inf in an empty world.
  double clearance(const Vec2& r) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& z : zones_) {
      best = std::min(best, norm(r - z.obstacle().center) - z.obstacle().radius - robot_radius_);
    }
    return best;
  }

 private:
  GoalFrame goal_;
  double robot_radius_;
  double rho_eps_;
  std::vector<ObstacleZones> zones_;
};

/// F* = prod sigma_i F_g + sum (1 - sigma_i) F_oi with normalized fields.
/// Throws InvalidQuery for r inside an obstacle disk.
inline Vec2 motion_plan(const StaticWorld& world, const Vec2& r) {
  double weight = 1.0;
  Vec2 repulsive{};
  for (std::size_t i = 0; i < world.obstacles().size(); ++i) {
    const auto& z = world.obstacles()[i];
    const double b = beta(z.obstacle(), r);
    if (b > 0.0) throw InvalidQuery("motion_plan: query inside obstacle " + std::to_string(i));
    const double s = z.sigma_of_beta(b);
    if (s < 1.0) {
      weight *= s;
      repulsive += (1.0 - s) * repulsive_normalized(z, r);
    }
  }
  return compose_plan(attractive_unit(world.goal(), r), weight, repulsive);
}

}  // namespace vfield

#endif  // VFIELD_BLENDING_HPP_
