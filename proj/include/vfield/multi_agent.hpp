/*
 * multi_agent.hpp
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

#ifndef VFIELD_MULTI_AGENT_HPP_
#define VFIELD_MULTI_AGENT_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vfield/blending.hpp"
#include "vfield/errors.hpp"
#include "vfield/sim.hpp"
#include "vfield/vec2.hpp"
#include "vfield/vector_field.hpp"

/**
 * Distributed coordination of unicycle agents. Every agent blends its own
 * attractive dipole with repelling nodes centred on the neighbours inside its
 * communication radius, and limits its linear speed against the neighbours it
 * is heading towards so that the pairwise distance cannot fall through d_m.
 *
 * Rounds are synchronous: controls for all agents are computed from one
 * snapshot, then every pose is advanced. Neighbour speeds are the ones
 * commanded in the previous round.
 */
namespace vfield {

/// |r_ji . eta_i| below this fraction of d_ij marks a grazing neighbour.
inline constexpr double kGrazingRatio = 1e-9;

/// Which side of the (d_r, d_c) band carries the repelling nodes.
enum class BumpOrientation {
  kRepelNear,  ///< sigma = 0 up to d_r, 1 from d_c on
  kAsWritten,  ///< sigma = 1 up to d_r, 0 from d_c on
};

struct AgentParams {
  double radius = 0.0;    ///< rho
  double rho_eps = 0.0;   ///< clearance margin in d_m = 2(2 rho + rho_eps)
  double r_comm = 0.0;    ///< R_c
  double d_m = 0.0;
  double d_r = 0.0;
  double d_c = 0.0;
  double eps_scale = 1.5;
  BumpOrientation bump = BumpOrientation::kRepelNear;
  ControlGains gains{};

  /// Smallest admissible d_m for the configured radius and margin.
  double min_distance_floor() const { return 2.0 * (2.0 * radius + rho_eps); }

  void validate() const {
    if (!(radius > 0.0)) throw ValidationError("agent: radius must be positive");
    if (!(rho_eps > 0.0)) throw ValidationError("agent: rho_eps must be positive");
    if (!(d_m >= min_distance_floor() * (1.0 - 1e-12))) {
      throw ValidationError("agent: d_m must be at least 2(2 rho + rho_eps) = " +
                            std::to_string(min_distance_floor()));
    }
    if (!(d_m < d_r && d_r < d_c)) throw ValidationError("agent: require d_m < d_r < d_c");
    if (!(d_c <= r_comm) || !std::isfinite(r_comm)) throw ValidationError("agent: require d_c <= R_c");
    if (!(eps_scale > 1.0)) throw ValidationError("agent: eps_scale must exceed 1");
    gains.validate();
  }
};

struct AgentState {
  int id = 0;
  Pose pose{};
  GoalFrame goal{};
  AgentParams params{};
  double last_u = 0.0;
  bool parked = false;  ///< reached its goal; holds position from then on
};

struct Neighbor {
  int id = 0;
  Vec2 r{};
  double u = 0.0;
  Vec2 eta{};
};

using NeighborView = std::vector<Neighbor>;

/// Cubic in d with s(d_r) = 1, s(d_c) = 0 and flat ends.
inline Cubic dynamic_bump_cubic(double d_r, double d_c) { return smoothstep_cubic(d_c, d_r); }

/**
 * Distance weight of the attractive term against one neighbour.
 * kRepelNear: 0 up to d_r, cubic on (d_r, d_c), 1 from d_c on.
 * kAsWritten: 1 up to d_r, cubic on (d_r, d_c), 0 from d_c on.
 * Below d_m the value of the nearest knot is kept.
 */
inline double dynamic_bump(const AgentParams& params, double d_ij) {
  const double s = d_ij <= params.d_r   ? 1.0
                   : d_ij >= params.d_c ? 0.0
                                        : std::clamp(dynamic_bump_cubic(params.d_r, params.d_c)(d_ij), 0.0, 1.0);
  return params.bump == BumpOrientation::kAsWritten ? s : 1.0 - s;
}

/// Unit vector from r_j towards r_i.
inline Vec2 repelling_node(const Vec2& r_i, const Vec2& r_j) {
  const Vec2 d = r_i - r_j;
  const double n = norm(d);
  if (!(n > 0.0)) throw DegenerateGeometry("repelling_node: coincident agents");
  return d * (1.0 / n);
}

/// Plan of one agent at position r against a frozen neighbour view.
inline Vec2 dynamic_plan_at(const AgentState& agent, const NeighborView& view, const Vec2& r) {
  double weight = 1.0;
  Vec2 repulsive{};
  for (const auto& n : view) {
    const double s = dynamic_bump(agent.params, norm(r - n.r));
    if (s < 1.0) {
      weight *= s;
      repulsive += (1.0 - s) * repelling_node(r, n.r);
    }
  }
  return compose_plan(attractive_unit(agent.goal, r), weight, repulsive);
}

inline Vec2 dynamic_plan(const AgentState& agent, const NeighborView& view) {
  return dynamic_plan_at(agent, view, agent.pose.r);
}

inline double agent_nominal_speed(const AgentState& agent) {
  return nominal_speed(agent.params.gains.k_u, SpeedLaw::kTanhDistance, agent.pose.r, agent.goal.position());
}

/// u_{i|j}: interpolates from eps_i u_{is|j} at d_m to u_ic at R_c.
/// Empty when agent i moves (almost) tangentially to j.
inline std::optional<double> safe_velocity(const AgentState& agent, const Vec2& eta_i, double u_ic,
                                           const Neighbor& j) {
  const AgentParams& p = agent.params;
  const Vec2 r_ji = agent.pose.r - j.r;
  const double d = norm(r_ji);
  const double j_i = dot(r_ji, eta_i);
  if (!(std::abs(j_i) >= kGrazingRatio * d)) return std::nullopt;
  const double u_match = j.u * dot(r_ji, j.eta) / j_i;
  const double span = p.r_comm - p.d_m;
  return u_ic * (d - p.d_m) / span + p.eps_scale * u_match * (p.r_comm - d) / span;
}

inline std::optional<double> safe_velocity(const AgentState& agent, const Neighbor& j, const NeighborView& view) {
  const Vec2 f = dynamic_plan(agent, view);
  return safe_velocity(agent, unit_from_angle(std::atan2(f.y, f.x)), agent_nominal_speed(agent), j);
}

/// u_i = max(0, min(u_ic, u_{i|j} over approached neighbours)), or u_ic when
/// no neighbour is approached. Near-grazing neighbours make u_{i|j} unbounded.
inline double coordinated_speed(const AgentState& agent, const Vec2& eta_i, const NeighborView& view) {
  const double u_ic = agent_nominal_speed(agent);
  std::optional<double> lowest;
  for (const auto& n : view) {
    if (!(dot(agent.pose.r - n.r, eta_i) < 0.0)) continue;
    const auto v = safe_velocity(agent, eta_i, u_ic, n);
    if (!v) continue;
    lowest = lowest ? std::min(*lowest, *v) : *v;
  }
  return lowest ? std::max(0.0, std::min(u_ic, *lowest)) : u_ic;
}

struct AgentCommand {
  double u = 0.0;
  double omega = 0.0;
  double phi = 0.0;
  Vec2 eta{};
};

inline AgentCommand control_agent(const AgentState& agent, const NeighborView& view, double fd_step) {
  const auto plan = [&](const Vec2& r) { return dynamic_plan_at(agent, view, r); };
  const Vec2 f = plan(agent.pose.r);
  const double phi = std::atan2(f.y, f.x);
  const Vec2 eta = unit_from_angle(phi);
  AgentCommand cmd;
  cmd.u = coordinated_speed(agent, eta, view);
  const HeadingCommand h = track_plan(plan, agent.pose, cmd.u, agent.params.gains.k_omega, fd_step);
  cmd.omega = h.omega;
  cmd.phi = h.phi;
  cmd.eta = eta;
  return cmd;
}

/// Time derivative of |r_i - r_j| for the agents' current headings and
/// last commanded speeds.
inline double ddt_distance(const AgentState& i, const AgentState& j) {
  const Vec2 r_ji = i.pose.r - j.pose.r;
  const double d = norm(r_ji);
  if (!(d > 0.0)) throw DegenerateGeometry("ddt_distance: coincident agents");
  const Vec2 vi = unit_from_angle(i.pose.theta) * i.last_u;
  const Vec2 vj = unit_from_angle(j.pose.theta) * j.last_u;
  return dot(r_ji, vi - vj) / d;
}

/// Symmetric matrix of pairwise distances, row-major.
class DistanceTable {
 public:
  explicit DistanceTable(std::span<const AgentState> agents) : n_(agents.size()), d_(n_ * n_, 0.0) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double v = norm(agents[i].pose.r - agents[j].pose.r);
        d_[i * n_ + j] = v;
        d_[j * n_ + i] = v;
      }
    }
  }

  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  std::size_t size() const { return n_; }

  double min_for(std::size_t i) const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n_; ++j) {
      if (j != i) m = std::min(m, d_[i * n_ + j]);
    }
    return m;
  }

 private:
  std::size_t n_;
  std::vector<double> d_;
};

/// Synchronous round: controls for every agent from one snapshot.
/// Plan directions are computed first so that each neighbour entry carries
/// the eta of the same snapshot.
inline std::vector<AgentCommand> compute_commands(std::span<const AgentState> agents, const DistanceTable& dist,
                                                  double fd_step, std::vector<int>* neighbor_counts = nullptr) {
  const std::size_t n = agents.size();
  std::vector<NeighborView> views(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && dist(i, j) <= agents[i].params.r_comm) {
        views[i].push_back({agents[j].id, agents[j].pose.r, agents[j].last_u, {}});
      }
    }
  }
  std::vector<Vec2> eta(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 f = dynamic_plan(agents[i], views[i]);
    eta[i] = unit_from_angle(std::atan2(f.y, f.x));
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && dist(i, j) <= agents[i].params.r_comm) views[i][k++].eta = eta[j];
    }
  }
  std::vector<AgentCommand> commands(n);
  if (neighbor_counts) neighbor_counts->assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (neighbor_counts) (*neighbor_counts)[i] = static_cast<int>(views[i].size());
    if (agents[i].parked) {
      commands[i] = AgentCommand{0.0, 0.0, std::atan2(eta[i].y, eta[i].x), eta[i]};
      continue;
    }
    commands[i] = control_agent(agents[i], views[i], fd_step);
  }
  return commands;
}

/// Advances every unparked pose one step under its command.
inline std::vector<AgentState> advance_agents(std::span<const AgentState> agents,
                                              std::span<const AgentCommand> commands, double dt) {
  std::vector<AgentState> next(agents.begin(), agents.end());
  for (std::size_t i = 0; i < next.size(); ++i) {
    next[i].last_u = commands[i].u;
    if (!next[i].parked) next[i].pose = unicycle_step(next[i].pose, commands[i].u, commands[i].omega, dt);
  }
  return next;
}

struct StepOutcome {
  std::vector<AgentState> agents;
  std::vector<AgentCommand> commands;
  /// First pair found closer than the sum of radii after the step.
  std::optional<std::pair<int, int>> violation;
};

inline StepOutcome step_world(std::span<const AgentState> agents, const SimConfig& cfg) {
  const DistanceTable before(agents);
  StepOutcome out;
  out.commands = compute_commands(agents, before, cfg.fd_step);
  out.agents = advance_agents(agents, out.commands, cfg.dt);
  const DistanceTable after(out.agents);
  for (std::size_t i = 0; i < out.agents.size() && !out.violation; ++i) {
    for (std::size_t j = i + 1; j < out.agents.size(); ++j) {
      if (after(i, j) < out.agents[i].params.radius + out.agents[j].params.radius) {
        out.violation = std::make_pair(out.agents[i].id, out.agents[j].id);
        break;
      }
    }
  }
  return out;
}

/// Counts crossings of d_r and d_c per pair inside a sliding window of steps.
class ChatterMonitor {
 public:
  ChatterMonitor(std::span<const AgentState> agents, long long window_steps)
      : n_(agents.size()), window_(window_steps), regime_(n_ * n_, -1), events_(n_ * n_) {
    d_r_.reserve(n_);
    d_c_.reserve(n_);
    for (const auto& a : agents) {
      d_r_.push_back(a.params.d_r);
      d_c_.push_back(a.params.d_c);
    }
  }

  void observe(long long step, const DistanceTable& dist) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double d = dist(i, j);
        const int reg = d <= d_r_[i] ? 0 : (d < d_c_[i] ? 1 : 2);
        int& prev = regime_[i * n_ + j];
        if (prev >= 0 && reg != prev) {
          auto& q = events_[i * n_ + j];
          for (int c = 0; c < std::abs(reg - prev); ++c) q.push_back(step);
          while (!q.empty() && q.front() <= step - window_) q.pop_front();
          max_in_window_ = std::max(max_in_window_, static_cast<long long>(q.size()));
          total_ += std::abs(reg - prev);
        }
        prev = reg;
      }
    }
  }

  long long max_in_window() const { return max_in_window_; }
  long long total_crossings() const { return total_; }

 private:
  std::size_t n_;
  long long window_;
  std::vector<double> d_r_;
  std::vector<double> d_c_;
  std::vector<int> regime_;
  std::vector<std::deque<long long>> events_;
  long long max_in_window_ = 0;
  long long total_ = 0;
};

struct AgentSample {
  Sample base{};
  double min_pair_dist = 0.0;
  int n_neighbors = 0;
};

struct AgentLog {
  int id = 0;
  std::vector<AgentSample> samples;
  RunStatus status = RunStatus::kRunning;
  double arrival_time = std::numeric_limits<double>::quiet_NaN();
  double min_pair_dist = std::numeric_limits<double>::infinity();
  double min_speed = std::numeric_limits<double>::infinity();
};

struct MultiRunResult {
  std::vector<AgentLog> agents;
  RunStatus status = RunStatus::kRunning;
  double global_min_pair_dist = std::numeric_limits<double>::infinity();
  long long max_crossings_in_window = 0;
  long long total_crossings = 0;
  std::optional<std::pair<int, int>> violation;
  double end_time = 0.0;

  bool all_converged() const {
    return std::all_of(agents.begin(), agents.end(), [](const AgentLog& a) { return a.status == RunStatus::kConverged; });
  }
};

inline void validate_agents(std::span<const AgentState> agents) {
  for (std::size_t i = 0; i < agents.size(); ++i) {
    try {
      agents[i].params.validate();
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(e.what()) + " (agent " + std::to_string(agents[i].id) + ")");
    }
  }
  const DistanceTable dist(agents);
  for (std::size_t i = 0; i < agents.size(); ++i) {
    for (std::size_t j = i + 1; j < agents.size(); ++j) {
      if (dist(i, j) < std::max(agents[i].params.d_m, agents[j].params.d_m)) {
        throw ValidationError("start: agents " + std::to_string(agents[i].id) + "," + std::to_string(agents[j].id) +
                              " closer than d_m");
      }
    }
  }
}

/**
 * Runs the protocol until every agent has parked at its goal, a pair comes
 * closer than the sum of the radii, or t_max elapses. The per-step order
 * (command, log, goal test, timeout test, advance) matches run_single.
 */
inline MultiRunResult run_multi(std::vector<AgentState> agents, const SimConfig& cfg) {
  cfg.validate();
  validate_agents(agents);
  const std::size_t n = agents.size();
  MultiRunResult res;
  res.agents.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.agents[i].id = agents[i].id;
  const auto window = static_cast<long long>(std::llround(10.0 / cfg.dt));
  ChatterMonitor chatter(agents, window);
  StepClock clock(cfg);
  std::vector<int> counts;
  long long step = 0;
  for (;;) {
    const DistanceTable dist(agents);
    chatter.observe(step, dist);
    const auto commands = compute_commands(agents, dist, cfg.fd_step, &counts);
    bool all_parked = true;
    for (std::size_t i = 0; i < n; ++i) {
      AgentLog& log = res.agents[i];
      const double mp = dist.min_for(i);
      log.min_pair_dist = std::min(log.min_pair_dist, mp);
      res.global_min_pair_dist = std::min(res.global_min_pair_dist, mp);
      if (agents[i].parked) continue;
      AgentSample s;
      s.base.t = clock.now();
      s.base.pose = agents[i].pose;
      s.base.u = commands[i].u;
      s.base.omega = commands[i].omega;
      s.base.phi = commands[i].phi;
      s.base.clearance = mp - 2.0 * agents[i].params.radius;
      s.min_pair_dist = mp;
      s.n_neighbors = counts[i];
      log.samples.push_back(s);
      log.min_speed = std::min(log.min_speed, commands[i].u);
      if (at_goal(agents[i].pose, agents[i].goal, cfg)) {
        agents[i].parked = true;
        log.status = RunStatus::kConverged;
        log.arrival_time = s.base.t;
        continue;
      }
      all_parked = false;
    }
    res.end_time = clock.now();
    if (all_parked) {
      res.status = RunStatus::kConverged;
      break;
    }
    if (clock.expired()) {
      for (auto& log : res.agents) {
        if (log.status == RunStatus::kRunning) log.status = RunStatus::kTimeout;
      }
      res.status = RunStatus::kTimeout;
      break;
    }
    // Agents parked in this round broadcast a zero speed from now on.
    std::vector<AgentCommand> applied = commands;
    for (std::size_t i = 0; i < n; ++i) {
      if (agents[i].parked) applied[i].u = applied[i].omega = 0.0;
    }
    agents = advance_agents(agents, applied, clock.next_step());
    clock.advance();
    ++step;
    const DistanceTable after(agents);
    for (std::size_t i = 0; i < n && !res.violation; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (after(i, j) < agents[i].params.radius + agents[j].params.radius) {
          res.violation = std::make_pair(agents[i].id, agents[j].id);
          break;
        }
      }
    }
    if (res.violation) {
      for (std::size_t i = 0; i < n; ++i) {
        res.global_min_pair_dist = std::min(res.global_min_pair_dist, after.min_for(i));
        if (res.agents[i].status == RunStatus::kRunning) res.agents[i].status = RunStatus::kProtocolViolation;
      }
      res.status = RunStatus::kProtocolViolation;
      res.end_time = clock.now();
      break;
    }
  }
  res.max_crossings_in_window = chatter.max_in_window();
  res.total_crossings = chatter.total_crossings();
  return res;
}

}  // namespace vfield

#endif  // VFIELD_MULTI_AGENT_HPP_
