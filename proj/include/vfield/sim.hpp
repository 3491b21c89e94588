/*
 * sim.hpp
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

#ifndef VFIELD_SIM_HPP_
#define VFIELD_SIM_HPP_

#include <cmath>
#include <limits>
#include <string_view>
#include <vector>

#include "vfield/blending.hpp"
#include "vfield/errors.hpp"
#include "vfield/vec2.hpp"
#include "vfield/vector_field.hpp"

namespace vfield {

/// Unicycle configuration; theta is kept in (-pi, pi].
struct Pose {
  Vec2 r{};
  double theta = 0.0;

  Pose() = default;
  Pose(Vec2 r_, double theta_) : r(r_), theta(wrap_angle(theta_)) {}

  friend bool operator==(const Pose&, const Pose&) = default;
};

struct ControlGains {
  double k_u = 1.0;
  double k_omega = 1.0;

  void validate() const {
    if (!(k_u > 0.0) || !(k_omega > 0.0) || !std::isfinite(k_u) || !std::isfinite(k_omega)) {
      throw ValidationError("gains: k_u and k_omega must be positive");
    }
  }
};

/// Shape of the nominal linear speed k_u tanh(.) as a function of goal distance.
enum class SpeedLaw {
  kTanhSquaredDistance,  ///< k_u tanh(|r - r_g|^2), single robot
  kTanhDistance,         ///< k_u tanh(|r - r_g|), nominal speed of an agent
};

struct SimConfig {
  double dt = 1e-3;
  double t_max = 100.0;
  double goal_pos_tol = 1e-3;
  double goal_ang_tol = 1e-2;
  double fd_step = 1e-6;
  SpeedLaw speed_law = SpeedLaw::kTanhSquaredDistance;

  void validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("sim: dt must be positive");
    if (!(t_max > dt) || !std::isfinite(t_max)) throw ValidationError("sim: t_max must exceed dt");
    if (!(goal_pos_tol > 0.0) || !(goal_ang_tol > 0.0)) {
      throw ValidationError("sim: goal tolerances must be positive");
    }
    if (!(fd_step > 0.0)) throw ValidationError("sim: fd_step must be positive");
  }
};

/// One RK4 step of x' = u cos(theta), y' = u sin(theta), theta' = omega
/// with the inputs held over the step.
inline Pose unicycle_step(const Pose& pose, double u, double omega, double dt) {
  struct D {
    double dx, dy, dth;
  };
  const auto f = [u, omega](double th) { return D{u * std::cos(th), u * std::sin(th), omega}; };
  const double th = pose.theta;
  const D k1 = f(th);
  const D k2 = f(th + 0.5 * dt * k1.dth);
  const D k3 = f(th + 0.5 * dt * k2.dth);
  const D k4 = f(th + dt * k3.dth);
  const double w = dt / 6.0;
  const Vec2 r{pose.r.x + w * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
               pose.r.y + w * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy)};
  return Pose{r, th + w * (k1.dth + 2.0 * k2.dth + 2.0 * k3.dth + k4.dth)};
}

inline double nominal_speed(double k_u, SpeedLaw law, const Vec2& r, const Vec2& goal) {
  const Vec2 e = r - goal;
  return law == SpeedLaw::kTanhSquaredDistance ? k_u * std::tanh(norm_sq(e)) : k_u * std::tanh(norm(e));
}

struct HeadingCommand {
  double omega = 0.0;
  double phi = 0.0;
  double phi_dot = 0.0;
};

/**
 * omega = -k_omega (theta - phi) + phi_dot with phi the direction of the
 * plan at the robot. phi_dot is the rate of the plan direction along the
 * motion, from central differences of the plan:
 *
 *   phi_dot = u (Fx (dFy/dx c + dFy/dy s) - Fy (dFx/dx c + dFx/dy s)) / |F|^2
 *
 * The 1/|F|^2 factor is 1 wherever the plan is a unit field.
 */
template <class Plan>
HeadingCommand track_plan(const Plan& plan, const Pose& pose, double u, double k_omega, double fd_step) {
  const Vec2 f = plan(pose.r);
  HeadingCommand cmd;
  cmd.phi = std::atan2(f.y, f.x);
  const double f2 = norm_sq(f);
  if (f2 >= kSingularNormSq && u != 0.0) {
    const Vec2 hx{fd_step, 0.0};
    const Vec2 hy{0.0, fd_step};
    const Vec2 dfdx = (plan(pose.r + hx) - plan(pose.r - hx)) * (0.5 / fd_step);
    const Vec2 dfdy = (plan(pose.r + hy) - plan(pose.r - hy)) * (0.5 / fd_step);
    const double c = std::cos(pose.theta);
    const double s = std::sin(pose.theta);
    const Vec2 along = dfdx * c + dfdy * s;
    cmd.phi_dot = u * cross(f, along) / f2;
  }
  cmd.omega = -k_omega * wrap_angle(pose.theta - cmd.phi) + cmd.phi_dot;
  return cmd;
}

struct Control {
  double u = 0.0;
  double omega = 0.0;
  double phi = 0.0;
};

/// Closed-loop law for one robot flowing along F*.
inline Control control_single(const StaticWorld& world, const ControlGains& gains, const Pose& pose, double fd_step,
                              SpeedLaw law = SpeedLaw::kTanhSquaredDistance) {
  const double u = nominal_speed(gains.k_u, law, pose.r, world.goal().position());
  const auto plan = [&world](const Vec2& r) { return motion_plan(world, r); };
  const HeadingCommand h = track_plan(plan, pose, u, gains.k_omega, fd_step);
  return {u, h.omega, h.phi};
}

enum class RunStatus { kRunning, kConverged, kCollision, kTimeout, kProtocolViolation };

inline std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::kRunning: return "running";
    case RunStatus::kConverged: return "converged";
    case RunStatus::kCollision: return "collision";
    case RunStatus::kTimeout: return "timeout";
    case RunStatus::kProtocolViolation: return "protocol_violation";
  }
  return "unknown";
}

struct Sample {
  double t = 0.0;
  Pose pose{};
  double u = 0.0;
  double omega = 0.0;
  double phi = 0.0;
  double clearance = 0.0;
};

struct TrajectoryLog {
  std::vector<Sample> samples;
  RunStatus status = RunStatus::kRunning;
  double arrival_time = std::numeric_limits<double>::quiet_NaN();

  double min_clearance() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) m = std::min(m, s.clearance);
    return m;
  }
};

inline bool at_goal(const Pose& pose, const GoalFrame& goal, const SimConfig& cfg) {
  return norm(pose.r - goal.position()) < cfg.goal_pos_tol &&
         std::abs(wrap_angle(pose.theta - goal.heading())) < cfg.goal_ang_tol;
}

/// Fixed-step clock: t_k = k dt, with a final partial step onto t_max.
class StepClock {
 public:
  explicit StepClock(const SimConfig& cfg) : dt_(cfg.dt), t_max_(cfg.t_max) {}

  double now() const { return t_; }
  bool expired() const { return t_max_ - t_ <= 1e-12 * t_max_; }
  double next_step() const { return std::min(dt_, t_max_ - t_); }
  void advance() {
    ++k_;
    const double next = static_cast<double>(k_) * dt_;
    t_ = next >= t_max_ ? t_max_ : next;
  }

 private:
  double dt_;
  double t_max_;
  double t_ = 0.0;
  long long k_ = 0;
};

/// Integrates the closed loop until the goal tolerances are met, the robot
/// hits an obstacle or t_max elapses.
inline TrajectoryLog run_single(const StaticWorld& world, const ControlGains& gains, const Pose& start,
                                const SimConfig& cfg) {
  gains.validate();
  cfg.validate();
  TrajectoryLog log;
  StepClock clock(cfg);
  Pose pose = start;
  for (;;) {
    Sample s;
    s.t = clock.now();
    s.pose = pose;
    s.clearance = world.clearance(pose.r);
    if (s.clearance < 0.0) {
      s.phi = std::numeric_limits<double>::quiet_NaN();
      log.samples.push_back(s);
      log.status = RunStatus::kCollision;
      return log;
    }
    const Control c = control_single(world, gains, pose, cfg.fd_step, cfg.speed_law);
    s.u = c.u;
    s.omega = c.omega;
    s.phi = c.phi;
    log.samples.push_back(s);
    if (at_goal(pose, world.goal(), cfg)) {
      log.status = RunStatus::kConverged;
      log.arrival_time = s.t;
      return log;
    }
    if (clock.expired()) {
      log.status = RunStatus::kTimeout;
      return log;
    }
    pose = unicycle_step(pose, c.u, c.omega, clock.next_step());
    clock.advance();
  }
}

}  // namespace vfield

#endif  // VFIELD_SIM_HPP_
