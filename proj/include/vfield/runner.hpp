/*
 * runner.hpp
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

#ifndef VFIELD_RUNNER_HPP_
#define VFIELD_RUNNER_HPP_

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>

#include "vfield/diagnostics.hpp"
#include "vfield/io.hpp"
#include "vfield/multi_agent.hpp"
#include "vfield/scenario.hpp"
#include "vfield/sim.hpp"
#include "vfield/svg.hpp"

namespace vfield {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitValidation = 2,
  kExitCollision = 3,
  kExitTimeout = 4,
};

inline int exit_code_for(RunStatus s) {
  switch (s) {
    case RunStatus::kConverged: return kExitOk;
    case RunStatus::kCollision:
    case RunStatus::kProtocolViolation: return kExitCollision;
    case RunStatus::kTimeout:
    case RunStatus::kRunning: return kExitTimeout;
  }
  return kExitFailure;
}

/// Samples per blending annulus for the seeded static diagnostics.
inline constexpr long kDiagnosticSamples = 10000;

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

template <class Writer>
void write_with(const std::filesystem::path& path, Writer&& w) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  w(out);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace detail

/**
 * Executes a validated scenario, writes its artifacts into dir and prints
 * one summary line per robot to report. Returns the process exit code.
 */
inline int run_scenario(const Scenario& sc, const std::filesystem::path& dir, std::ostream& report) {
  std::filesystem::create_directories(dir);
  switch (sc.mode) {
    case ScenarioMode::kFieldPlot: {
      const PlotBounds b = sc.plot.bounds.value_or(PlotBounds{});
      detail::write_file(dir / "field.svg", render_field(sc.field, b, sc.plot.grid_n));
      report << "field_plot lambda=" << format_real(sc.field.lambda) << " arrows=" << sc.plot.grid_n * sc.plot.grid_n
             << '\n';
      return kExitOk;
    }
    case ScenarioMode::kStatic: {
      const StaticWorld world = sc.scene->world();
      const TrajectoryLog log = run_single(world, sc.scene->gains, sc.scene->start, sc.sim);
      detail::write_with(dir / "trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(os, log); });
      detail::write_with(dir / "diagnostics.csv", [&](std::ostream& os) {
        write_diagnostics_csv(os, sample_blend_norms(world, kDiagnosticSamples, sc.seed));
      });
      const PlotBounds b = sc.plot.bounds.value_or(scene_bounds(world, sc.scene->start.r));
      detail::write_file(dir / "plot.svg", render_static(world, b, sc.plot.grid_n, &log));
      const Sample& last = log.samples.back();
      report << "robot 0 status=" << to_string(log.status) << " arrival_time=" << format_real(log.arrival_time)
             << " min_clearance=" << format_real(log.min_clearance())
             << " final_heading_error=" << format_real(std::abs(wrap_angle(last.pose.theta - world.goal().heading())))
             << '\n';
      return exit_code_for(log.status);
    }
    case ScenarioMode::kMulti: {
      const MultiRunResult res = run_multi(sc.agents, sc.sim);
      for (const auto& a : res.agents) {
        detail::write_with(dir / ("agent_" + std::to_string(a.id) + ".csv"),
                           [&](std::ostream& os) { write_agent_csv(os, a); });
        report << "agent " << a.id << " status=" << to_string(a.status)
               << " arrival_time=" << format_real(a.arrival_time) << " min_pair_dist=" << format_real(a.min_pair_dist)
               << '\n';
      }
      detail::write_with(dir / "summary.csv", [&](std::ostream& os) { write_summary_csv(os, res); });
      const PlotBounds b = sc.plot.bounds.value_or(agents_bounds(sc.agents));
      detail::write_file(dir / "plot.svg", render_multi(sc.agents, res, b));
      report << "run status=" << to_string(res.status) << " global_min_pair_dist="
             << format_real(res.global_min_pair_dist) << " max_crossings_in_window=" << res.max_crossings_in_window
             << '\n';
      return exit_code_for(res.status);
    }
  }
  return kExitFailure;
}

}  // namespace vfield

#endif  // VFIELD_RUNNER_HPP_
