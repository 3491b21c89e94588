/*
 * diagnostics.hpp
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

#ifndef VFIELD_DIAGNOSTICS_HPP_
#define VFIELD_DIAGNOSTICS_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <random>
#include <vector>

#include "vfield/blending.hpp"
#include "vfield/io.hpp"

namespace vfield {

/// Uniform double in [0, 1) from the top 53 bits, identical on every
/// standard library.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit_uniform(rng); }

/// Area-uniform point of the annulus rho_in < |r - c| < rho_out.
inline Vec2 sample_annulus(std::mt19937_64& rng, const Vec2& c, double rho_in, double rho_out) {
  const double rad = std::sqrt(uniform(rng, rho_in * rho_in, rho_out * rho_out));
  return c + unit_from_angle(uniform(rng, -kPi, kPi)) * rad;
}

struct BlendDiagnostic {
  std::size_t obstacle = 0;
  long samples = 0;
  double min_norm = std::numeric_limits<double>::infinity();
  Vec2 worst{};
  Vec2 singular_point{};  ///< c + rho_Z p, where the inner zone meets the goal-far axis
};

/**
 * Smallest |sigma F_g + (1 - sigma) F_o| over random points of each
 * blending annulus, skipping points within off_axis of the p axis.
 */
inline std::vector<BlendDiagnostic> sample_blend_norms(const StaticWorld& world, long samples, std::uint64_t seed,
                                                       double off_axis = 1e-9) {
  std::mt19937_64 rng(seed);
  std::vector<BlendDiagnostic> out;
  for (std::size_t i = 0; i < world.obstacles().size(); ++i) {
    const auto& z = world.obstacles()[i];
    BlendDiagnostic d;
    d.obstacle = i;
    d.singular_point = z.obstacle().center + z.p() * z.rho_z();
    while (d.samples < samples) {
      const Vec2 r = sample_annulus(rng, z.obstacle().center, z.rho_z(), z.rho_f());
      if (std::abs(cross(z.p(), r - z.obstacle().center)) < off_axis) continue;
      ++d.samples;
      const double n = norm(blend_single(z, world.goal(), r));
      if (n < d.min_norm) {
        d.min_norm = n;
        d.worst = r;
      }
    }
    out.push_back(d);
  }
  return out;
}

inline void write_diagnostics_csv(std::ostream& os, const std::vector<BlendDiagnostic>& diags) {
  os << "obstacle,samples,min_blend_norm,worst_x,worst_y,singular_x,singular_y\n";
  for (const auto& d : diags) {
    os << d.obstacle << ',' << d.samples << ',' << format_real(d.min_norm) << ',' << format_real(d.worst.x) << ','
       << format_real(d.worst.y) << ',' << format_real(d.singular_point.x) << ',' << format_real(d.singular_point.y)
       << '\n';
  }
}

}  // namespace vfield

#endif  // VFIELD_DIAGNOSTICS_HPP_
