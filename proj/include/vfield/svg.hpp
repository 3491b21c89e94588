/*
 * svg.hpp
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

#ifndef VFIELD_SVG_HPP_
#define VFIELD_SVG_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vfield/blending.hpp"
#include "vfield/io.hpp"
#include "vfield/multi_agent.hpp"
#include "vfield/scenario.hpp"
#include "vfield/sim.hpp"
#include "vfield/vector_field.hpp"

namespace vfield {

/// World-to-page mapping with y up and equal aspect.
class SvgCanvas {
 public:
  static constexpr double kWidth = 800.0;

  explicit SvgCanvas(const PlotBounds& b) : b_(b) {
    b_.validate();
    scale_ = kWidth / (b_.xmax - b_.xmin);
    height_ = scale_ * (b_.ymax - b_.ymin);
    out_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
    put_real(out_, kWidth);
    out_ += "\" height=\"";
    put_real(out_, height_);
    out_ += "\" viewBox=\"0 0 ";
    put_real(out_, kWidth);
    out_ += ' ';
    put_real(out_, height_);
    out_ +=
        "\">\n<style>.arrow{stroke:#333;stroke-width:1;fill:none}.obstacle{fill:#999;stroke:none}"
        ".zone{fill:none;stroke:#000;stroke-width:1}.blend{fill:none;stroke:#d00;stroke-width:1}"
        ".goal{fill:#0a0;stroke:#060}.path{fill:none;stroke:#06c;stroke-width:1.5}"
        ".agent{fill:none;stroke:#06c;stroke-width:1}</style>\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
  }

  double scale() const { return scale_; }

  void arrow(const Vec2& at, const Vec2& dir, double length) {
    const Vec2 c = page(at);
    out_ += "<path class=\"arrow\" d=\"M";
    const double n = norm(dir);
    if (!(n > 0.0) || !std::isfinite(n)) {
      point(c);
      out_ += "h0\"/>\n";
      return;
    }
    // Page y grows downwards.
    const Vec2 u{dir.x / n, -dir.y / n};
    const double half = 0.5 * length * scale_;
    const Vec2 tail = c - u * half;
    const Vec2 tip = c + u * half;
    const double head = 0.35 * half;
    const Vec2 side{-u.y, u.x};
    point(tail);
    out_ += 'L';
    point(tip);
    out_ += 'M';
    point(tip - u * head + side * (0.5 * head));
    out_ += 'L';
    point(tip);
    out_ += 'L';
    point(tip - u * head - side * (0.5 * head));
    out_ += "\"/>\n";
  }

  void circle(const Vec2& center, double radius, const char* cls) {
    const Vec2 c = page(center);
    out_ += "<circle class=\"";
    out_ += cls;
    out_ += "\" cx=\"";
    put_real(out_, c.x);
    out_ += "\" cy=\"";
    put_real(out_, c.y);
    out_ += "\" r=\"";
    put_real(out_, radius * scale_);
    out_ += "\"/>\n";
  }

  void goal(const GoalFrame& g, double size) {
    circle(g.position(), 0.3 * size, "goal");
    const Vec2 a = page(g.position());
    const Vec2 b = page(g.position() + unit_from_angle(g.heading()) * size);
    out_ += "<path class=\"zone\" d=\"M";
    point(a);
    out_ += 'L';
    point(b);
    out_ += "\"/>\n";
  }

  void polyline(std::span<const Vec2> pts, const char* cls) {
    if (pts.empty()) return;
    out_ += "<polyline class=\"";
    out_ += cls;
    out_ += "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out_ += ' ';
      const Vec2 p = page(pts[i]);
      put_real(out_, p.x);
      out_ += ',';
      put_real(out_, p.y);
    }
    out_ += "\"/>\n";
  }

  std::string finish() {
    out_ += "</svg>\n";
    return std::move(out_);
  }

 private:
  Vec2 page(const Vec2& r) const { return {(r.x - b_.xmin) * scale_, (b_.ymax - r.y) * scale_}; }

  void point(const Vec2& p) {
    put_real(out_, p.x);
    out_ += ' ';
    put_real(out_, p.y);
  }

  PlotBounds b_;
  double scale_ = 1.0;
  double height_ = 0.0;
  std::string out_;
};

/// Cell-centred grid_n x grid_n arrows of the direction of f.
inline void draw_arrows(SvgCanvas& canvas, const PlotBounds& b, int grid_n, const std::function<Vec2(const Vec2&)>& f) {
  if (grid_n < 2) throw ValidationError("plot: grid_n must be at least 2");
  const double hx = (b.xmax - b.xmin) / grid_n;
  const double hy = (b.ymax - b.ymin) / grid_n;
  const double length = 0.8 * std::min(hx, hy);
  for (int iy = 0; iy < grid_n; ++iy) {
    for (int ix = 0; ix < grid_n; ++ix) {
      const Vec2 r{b.xmin + (ix + 0.5) * hx, b.ymin + (iy + 0.5) * hy};
      canvas.arrow(r, f(r), length);
    }
  }
}

/// At most max_points evenly spaced vertices of a path.
inline std::vector<Vec2> thin_path(const std::vector<Vec2>& pts, std::size_t max_points = 2000) {
  if (pts.size() <= max_points) return pts;
  std::vector<Vec2> out;
  const double stride = static_cast<double>(pts.size() - 1) / static_cast<double>(max_points - 1);
  for (std::size_t k = 0; k < max_points; ++k) out.push_back(pts[static_cast<std::size_t>(std::llround(k * stride))]);
  return out;
}

/// Quiver plot of one member of the field family.
inline std::string render_field(const FieldParams& params, const PlotBounds& bounds, int grid_n) {
  SvgCanvas canvas(bounds);
  draw_arrows(canvas, bounds, grid_n, [&](const Vec2& r) { return eval_field(params, r); });
  return canvas.finish();
}

inline PlotBounds scene_bounds(const StaticWorld& world, const Vec2& start) {
  PlotBounds b{start.x, start.x, start.y, start.y};
  auto grow = [&b](const Vec2& p, double pad) {
    b.xmin = std::min(b.xmin, p.x - pad);
    b.xmax = std::max(b.xmax, p.x + pad);
    b.ymin = std::min(b.ymin, p.y - pad);
    b.ymax = std::max(b.ymax, p.y + pad);
  };
  grow(world.goal().position(), 0.0);
  for (const auto& z : world.obstacles()) grow(z.obstacle().center, z.rho_f());
  const double pad = 0.08 * std::max({b.xmax - b.xmin, b.ymax - b.ymin, 1e-3});
  return {b.xmin - pad, b.xmax + pad, b.ymin - pad, b.ymax + pad};
}

/// Plan arrows, obstacle disks, zone (black) and blend (red) circles, goal
/// and, when given, the robot path.
inline std::string render_static(const StaticWorld& world, const PlotBounds& bounds, int grid_n,
                                 const TrajectoryLog* log = nullptr) {
  SvgCanvas canvas(bounds);
  draw_arrows(canvas, bounds, grid_n, [&world](const Vec2& r) {
    try {
      return motion_plan(world, r);
    } catch (const InvalidQuery&) {
      return Vec2{};
    }
  });
  for (const auto& z : world.obstacles()) {
    canvas.circle(z.obstacle().center, z.obstacle().radius, "obstacle");
    canvas.circle(z.obstacle().center, z.rho_z(), "zone");
    canvas.circle(z.obstacle().center, z.rho_f(), "blend");
  }
  canvas.goal(world.goal(), 0.02 * (bounds.xmax - bounds.xmin));
  if (log) {
    std::vector<Vec2> pts;
    pts.reserve(log->samples.size());
    for (const auto& s : log->samples) pts.push_back(s.pose.r);
    canvas.polyline(thin_path(pts), "path");
  }
  return canvas.finish();
}

inline PlotBounds agents_bounds(std::span<const AgentState> agents) {
  PlotBounds b{agents[0].pose.r.x, agents[0].pose.r.x, agents[0].pose.r.y, agents[0].pose.r.y};
  double pad = 0.0;
  for (const auto& a : agents) {
    for (const Vec2& p : {a.pose.r, a.goal.position()}) {
      b.xmin = std::min(b.xmin, p.x);
      b.xmax = std::max(b.xmax, p.x);
      b.ymin = std::min(b.ymin, p.y);
      b.ymax = std::max(b.ymax, p.y);
    }
    pad = std::max(pad, a.params.r_comm);
  }
  return {b.xmin - pad, b.xmax + pad, b.ymin - pad, b.ymax + pad};
}

/// Agent paths with start disks and goal markers.
inline std::string render_multi(std::span<const AgentState> agents, const MultiRunResult& res,
                                const PlotBounds& bounds) {
  SvgCanvas canvas(bounds);
  for (std::size_t i = 0; i < agents.size(); ++i) {
    canvas.circle(agents[i].pose.r, agents[i].params.radius, "agent");
    canvas.goal(agents[i].goal, agents[i].params.radius * 2.0);
    if (i < res.agents.size()) {
      std::vector<Vec2> pts;
      pts.reserve(res.agents[i].samples.size());
      for (const auto& s : res.agents[i].samples) pts.push_back(s.base.pose.r);
      canvas.polyline(thin_path(pts), "path");
    }
  }
  return canvas.finish();
}

}  // namespace vfield

#endif  // VFIELD_SVG_HPP_
