/*
 * test_support.hpp
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

#ifndef VFIELD_TESTS_TEST_SUPPORT_HPP_
#define VFIELD_TESTS_TEST_SUPPORT_HPP_

#include <cmath>
#include <cstdint>
#include <random>

#include "vfield/diagnostics.hpp"
#include "vfield/sim.hpp"
#include "vfield/vec2.hpp"

namespace vfield::test {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Vec2 random_vec(std::mt19937_64& rng, double lo, double hi) { return {uniform(rng, lo, hi), uniform(rng, lo, hi)}; }

/// Classical RK4 for r' = f(r).
template <class F>
Vec2 rk4(const F& f, const Vec2& r, double h) {
  const Vec2 k1 = f(r);
  const Vec2 k2 = f(r + k1 * (0.5 * h));
  const Vec2 k3 = f(r + k2 * (0.5 * h));
  const Vec2 k4 = f(r + k3 * h);
  return r + (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (h / 6.0);
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace vfield::test

#endif  // VFIELD_TESTS_TEST_SUPPORT_HPP_
