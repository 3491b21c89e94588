/*
 * io.hpp
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

#ifndef VFIELD_IO_HPP_
#define VFIELD_IO_HPP_

#include <charconv>
#include <ostream>
#include <string>
#include <system_error>

#include "vfield/multi_agent.hpp"
#include "vfield/sim.hpp"

namespace vfield {

inline constexpr const char* kTrajectoryHeader = "t,x,y,theta,u,omega,phi,clearance";
inline constexpr const char* kAgentHeader = "t,x,y,theta,u,omega,phi,clearance,min_pair_dist,n_neighbors";
inline constexpr const char* kSummaryHeader = "id,status,arrival_time,min_pair_dist,global_min_pair_dist";

/// Shortest decimal text that parses back to the same double.
inline void put_real(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

inline std::string format_real(double v) {
  std::string s;
  put_real(s, v);
  return s;
}

namespace detail {

inline void put_sample(std::string& line, const Sample& s) {
  const double fields[] = {s.t, s.pose.r.x, s.pose.r.y, s.pose.theta, s.u, s.omega, s.phi, s.clearance};
  bool first = true;
  for (double v : fields) {
    if (!first) line.push_back(',');
    first = false;
    put_real(line, v);
  }
}

}  // namespace detail

inline void write_trajectory_csv(std::ostream& os, const TrajectoryLog& log) {
  os << kTrajectoryHeader << '\n';
  std::string line;
  for (const auto& s : log.samples) {
    line.clear();
    detail::put_sample(line, s);
    line.push_back('\n');
    os << line;
  }
}

inline void write_agent_csv(std::ostream& os, const AgentLog& log) {
  os << kAgentHeader << '\n';
  std::string line;
  for (const auto& s : log.samples) {
    line.clear();
    detail::put_sample(line, s.base);
    line.push_back(',');
    put_real(line, s.min_pair_dist);
    line.push_back(',');
    line += std::to_string(s.n_neighbors);
    line.push_back('\n');
    os << line;
  }
}

inline void write_summary_csv(std::ostream& os, const MultiRunResult& res) {
  os << kSummaryHeader << '\n';
  for (const auto& a : res.agents) {
    os << a.id << ',' << to_string(a.status) << ',' << format_real(a.arrival_time) << ','
       << format_real(a.min_pair_dist) << ',' << format_real(res.global_min_pair_dist) << '\n';
  }
}

}  // namespace vfield

#endif  // VFIELD_IO_HPP_
