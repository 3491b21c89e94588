/*
 * scenario.hpp
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

#ifndef VFIELD_SCENARIO_HPP_
#define VFIELD_SCENARIO_HPP_

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vfield/blending.hpp"
#include "vfield/errors.hpp"
#include "vfield/multi_agent.hpp"
#include "vfield/sim.hpp"
#include "vfield/vec2.hpp"
#include "vfield/vector_field.hpp"

/**
 * Scenario files are YAML documents:
 *
 *   mode: static            # field_plot | static | multi
 *   seed: 7
 *   sim:   { dt: 0.01, t_max: 100, goal_pos_tol: 1e-3, goal_ang_tol: 1e-2,
 *            fd_step: 1e-6, speed_law: tanh_sq }
 *   plot:  { bounds: [xmin, xmax, ymin, ymax], grid_n: 25 }
 *
 *   field: { lambda: 2, p: [1, 0] }                           # field_plot
 *
 *   goal:  { position: [x, y], heading: 0 }                   # static
 *   robot: { radius: 0.01, rho_eps: 0.005, k_u: 0.075, k_omega: 2.5,
 *            start: [x, y, theta] }
 *   obstacles:
 *     - { center: [x, y], radius: 0.03, rho_F: 0.05 }          # rho_F optional
 *
 *   agent_defaults: { radius, rho_eps, R_c, d_m, d_r, d_c,     # multi
 *                     eps_scale, k_u, k_omega, bump }
 *   agents:
 *     - { id: 0, start: [x, y, theta], goal: [x, y, theta] }  # plus overrides
 *
 * Unknown keys are rejected so that a misspelt parameter cannot silently
 * fall back to its default.
 */
namespace vfield {

enum class ScenarioMode { kFieldPlot, kStatic, kMulti };

inline std::string_view to_string(ScenarioMode m) {
  switch (m) {
    case ScenarioMode::kFieldPlot: return "field_plot";
    case ScenarioMode::kStatic: return "static";
    case ScenarioMode::kMulti: return "multi";
  }
  return "unknown";
}

struct PlotBounds {
  double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;

  void validate() const {
    if (!std::isfinite(xmin) || !std::isfinite(xmax) || !std::isfinite(ymin) || !std::isfinite(ymax) ||
        !(xmin < xmax) || !(ymin < ymax)) {
      throw ValidationError("plot: bounds must be finite with xmin < xmax and ymin < ymax");
    }
  }
};

struct PlotSpec {
  std::optional<PlotBounds> bounds;  ///< computed from the scene when absent
  int grid_n = 25;
};

struct StaticScene {
  GoalFrame goal{};
  double robot_radius = 0.0;
  double rho_eps = 0.0;
  std::vector<StaticWorld::ObstacleSpec> obstacles;
  ControlGains gains{};
  Pose start{};

  StaticWorld world() const { return StaticWorld(goal, robot_radius, rho_eps, obstacles); }
};

struct Scenario {
  ScenarioMode mode = ScenarioMode::kStatic;
  std::uint64_t seed = 0;
  SimConfig sim{};
  PlotSpec plot{};
  FieldParams field{};
  std::optional<StaticScene> scene;
  std::vector<AgentState> agents;
};

namespace detail {

inline int line_of(const YAML::Node& n) { return n.Mark().is_null() ? 0 : n.Mark().line + 1; }

[[noreturn]] inline void fail(const YAML::Node& n, const std::string& what) { throw ParseError(what, line_of(n)); }

inline void only_keys(const YAML::Node& map, std::string_view where, std::initializer_list<std::string_view> keys) {
  if (!map.IsMap()) fail(map, std::string(where) + ": expected a mapping");
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    bool known = false;
    for (auto k : keys) known = known || key == k;
    if (!known) fail(kv.first, std::string(where) + ": unknown key '" + key + "'");
  }
}

inline double real(const YAML::Node& n, std::string_view field) {
  if (!n.IsScalar()) fail(n, std::string(field) + ": expected a number");
  double v = 0.0;
  if (!YAML::convert<double>::decode(n, v)) fail(n, std::string(field) + ": expected a number");
  return v;
}

inline double real_or(const YAML::Node& map, const char* key, double fallback, std::string_view where) {
  const YAML::Node n = map[key];
  return n ? real(n, std::string(where) + "." + key) : fallback;
}

inline double require_real(const YAML::Node& map, const char* key, std::string_view where) {
  const YAML::Node n = map[key];
  if (!n) fail(map, std::string(where) + ": missing '" + key + "'");
  return real(n, std::string(where) + "." + key);
}

inline std::vector<double> reals(const YAML::Node& n, std::size_t count, std::string_view field) {
  if (!n.IsSequence() || n.size() != count) {
    fail(n, std::string(field) + ": expected a list of " + std::to_string(count) + " numbers");
  }
  std::vector<double> out;
  for (const auto& e : n) out.push_back(real(e, field));
  return out;
}

inline Vec2 vec2(const YAML::Node& n, std::string_view field) {
  const auto v = reals(n, 2, field);
  return {v[0], v[1]};
}

inline Pose pose3(const YAML::Node& n, std::string_view field) {
  const auto v = reals(n, 3, field);
  return Pose{{v[0], v[1]}, v[2]};
}

inline YAML::Node require(const YAML::Node& map, const char* key, std::string_view where) {
  const YAML::Node n = map[key];
  if (!n) fail(map, std::string(where) + ": missing '" + key + "'");
  return n;
}

inline SimConfig parse_sim(const YAML::Node& n, SimConfig cfg) {
  if (!n) return cfg;
  only_keys(n, "sim", {"dt", "t_max", "goal_pos_tol", "goal_ang_tol", "fd_step", "speed_law"});
  cfg.dt = real_or(n, "dt", cfg.dt, "sim");
  cfg.t_max = real_or(n, "t_max", cfg.t_max, "sim");
  cfg.goal_pos_tol = real_or(n, "goal_pos_tol", cfg.goal_pos_tol, "sim");
  cfg.goal_ang_tol = real_or(n, "goal_ang_tol", cfg.goal_ang_tol, "sim");
  cfg.fd_step = real_or(n, "fd_step", cfg.fd_step, "sim");
  if (const YAML::Node law = n["speed_law"]) {
    const auto s = law.as<std::string>();
    if (s == "tanh_sq") {
      cfg.speed_law = SpeedLaw::kTanhSquaredDistance;
    } else if (s == "tanh") {
      cfg.speed_law = SpeedLaw::kTanhDistance;
    } else {
      fail(law, "sim.speed_law: expected tanh_sq or tanh");
    }
  }
  return cfg;
}

inline PlotSpec parse_plot(const YAML::Node& n) {
  PlotSpec spec;
  if (!n) return spec;
  only_keys(n, "plot", {"bounds", "grid_n"});
  if (const YAML::Node b = n["bounds"]) {
    const auto v = reals(b, 4, "plot.bounds");
    spec.bounds = PlotBounds{v[0], v[1], v[2], v[3]};
    spec.bounds->validate();
  }
  if (const YAML::Node g = n["grid_n"]) {
    int v = 0;
    if (!YAML::convert<int>::decode(g, v)) fail(g, "plot.grid_n: expected an integer");
    spec.grid_n = v;
  }
  if (spec.grid_n < 2) throw ValidationError("plot: grid_n must be at least 2");
  return spec;
}

inline void parse_agent_fields(const YAML::Node& n, AgentParams& p, std::string_view where) {
  p.radius = real_or(n, "radius", p.radius, where);
  p.rho_eps = real_or(n, "rho_eps", p.rho_eps, where);
  p.r_comm = real_or(n, "R_c", p.r_comm, where);
  p.d_m = real_or(n, "d_m", p.d_m, where);
  p.d_r = real_or(n, "d_r", p.d_r, where);
  p.d_c = real_or(n, "d_c", p.d_c, where);
  p.eps_scale = real_or(n, "eps_scale", p.eps_scale, where);
  p.gains.k_u = real_or(n, "k_u", p.gains.k_u, where);
  p.gains.k_omega = real_or(n, "k_omega", p.gains.k_omega, where);
  if (const YAML::Node b = n["bump"]) {
    const auto s = b.as<std::string>();
    if (s == "repel_near") {
      p.bump = BumpOrientation::kRepelNear;
    } else if (s == "as_written") {
      p.bump = BumpOrientation::kAsWritten;
    } else {
      fail(b, std::string(where) + ".bump: expected repel_near or as_written");
    }
  }
}

#define VFIELD_AGENT_KEYS "radius", "rho_eps", "R_c", "d_m", "d_r", "d_c", "eps_scale", "k_u", "k_omega", "bump"

inline StaticScene parse_static(const YAML::Node& root) {
  StaticScene sc;
  const YAML::Node goal = require(root, "goal", "scenario");
  only_keys(goal, "goal", {"position", "heading"});
  sc.goal = GoalFrame(vec2(require(goal, "position", "goal"), "goal.position"), real_or(goal, "heading", 0.0, "goal"));

  const YAML::Node robot = require(root, "robot", "scenario");
  only_keys(robot, "robot", {"radius", "rho_eps", "k_u", "k_omega", "start"});
  sc.robot_radius = require_real(robot, "radius", "robot");
  sc.rho_eps = require_real(robot, "rho_eps", "robot");
  sc.gains.k_u = require_real(robot, "k_u", "robot");
  sc.gains.k_omega = require_real(robot, "k_omega", "robot");
  sc.start = pose3(require(robot, "start", "robot"), "robot.start");
  sc.gains.validate();

  if (const YAML::Node obs = root["obstacles"]) {
    if (!obs.IsSequence()) fail(obs, "obstacles: expected a list");
    for (const auto& o : obs) {
      only_keys(o, "obstacle", {"center", "radius", "rho_F"});
      StaticWorld::ObstacleSpec spec;
      spec.obstacle.center = vec2(require(o, "center", "obstacle"), "obstacle.center");
      spec.obstacle.radius = require_real(o, "radius", "obstacle");
      if (const YAML::Node f = o["rho_F"]) spec.rho_f = real(f, "obstacle.rho_F");
      sc.obstacles.push_back(spec);
    }
  }
  const StaticWorld world = sc.world();
  if (world.clearance(sc.start.r) < 0.0) throw ValidationError("start: robot overlaps an obstacle");
  return sc;
}

inline std::vector<AgentState> parse_agents(const YAML::Node& root) {
  AgentParams defaults;
  if (const YAML::Node d = root["agent_defaults"]) {
    only_keys(d, "agent_defaults", {VFIELD_AGENT_KEYS});
    parse_agent_fields(d, defaults, "agent_defaults");
  }
  const YAML::Node list = require(root, "agents", "scenario");
  if (!list.IsSequence() || list.size() == 0) fail(list, "agents: expected a non-empty list");
  std::vector<AgentState> agents;
  for (const auto& a : list) {
    only_keys(a, "agent", {"id", "start", "goal", VFIELD_AGENT_KEYS});
    AgentState s;
    s.id = static_cast<int>(agents.size());
    if (const YAML::Node id = a["id"]) {
      if (!YAML::convert<int>::decode(id, s.id)) fail(id, "agent.id: expected an integer");
    }
    s.pose = pose3(require(a, "start", "agent"), "agent.start");
    const Pose g = pose3(require(a, "goal", "agent"), "agent.goal");
    s.goal = GoalFrame(g.r, g.theta);
    s.params = defaults;
    parse_agent_fields(a, s.params, "agent");
    for (const auto& other : agents) {
      if (other.id == s.id) fail(a, "agent: duplicate id " + std::to_string(s.id));
    }
    agents.push_back(s);
  }
  validate_agents(agents);
  return agents;
}

#undef VFIELD_AGENT_KEYS

}  // namespace detail

/// Parses and validates a scenario held in memory.
inline Scenario parse_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, e.mark.is_null() ? 0 : e.mark.line + 1);
  }
  if (!root || !root.IsMap()) throw ParseError("scenario: expected a mapping at top level", 1);

  try {
    detail::only_keys(root, "scenario",
                      {"mode", "seed", "sim", "plot", "field", "goal", "robot", "obstacles", "agent_defaults",
                       "agents"});
    Scenario s;
    const auto mode = detail::require(root, "mode", "scenario").as<std::string>();
    if (mode == "field_plot") {
      s.mode = ScenarioMode::kFieldPlot;
    } else if (mode == "static") {
      s.mode = ScenarioMode::kStatic;
    } else if (mode == "multi") {
      s.mode = ScenarioMode::kMulti;
    } else {
      detail::fail(root["mode"], "mode: expected field_plot, static or multi");
    }
    if (const YAML::Node seed = root["seed"]) {
      if (!YAML::convert<std::uint64_t>::decode(seed, s.seed)) detail::fail(seed, "seed: expected an integer");
    }
    SimConfig sim;
    if (s.mode == ScenarioMode::kMulti) sim.speed_law = SpeedLaw::kTanhDistance;
    s.sim = detail::parse_sim(root["sim"], sim);
    s.sim.validate();
    s.plot = detail::parse_plot(root["plot"]);

    switch (s.mode) {
      case ScenarioMode::kFieldPlot: {
        const YAML::Node f = detail::require(root, "field", "scenario");
        detail::only_keys(f, "field", {"lambda", "p"});
        s.field = FieldParams(detail::require_real(f, "lambda", "field"), detail::vec2(detail::require(f, "p", "field"), "field.p"));
        break;
      }
      case ScenarioMode::kStatic:
        s.scene = detail::parse_static(root);
        break;
      case ScenarioMode::kMulti:
        s.agents = detail::parse_agents(root);
        break;
    }
    return s;
  } catch (const YAML::BadConversion& e) {
    throw ParseError(e.msg, e.mark.is_null() ? 0 : e.mark.line + 1);
  }
}

/// Reads, parses and validates a scenario file.
inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace vfield

#endif  // VFIELD_SCENARIO_HPP_
