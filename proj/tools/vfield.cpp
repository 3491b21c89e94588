/*
 * vfield.cpp
 * vfield command line
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

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "vfield/runner.hpp"

namespace {

int field_plot(double lambda, double px, double py, const std::vector<double>& bounds, int grid_n,
               const std::string& out) {
  const vfield::FieldParams params(lambda, {px, py});
  vfield::PlotBounds b;
  if (!bounds.empty()) b = {bounds[0], bounds[1], bounds[2], bounds[3]};
  if (grid_n < 2) throw vfield::ValidationError("field-plot: grid must be at least 2");
  const std::string svg = vfield::render_field(params, b, grid_n);
  vfield::detail::write_file(out, svg);
  std::cout << "wrote " << out << " (" << grid_n * grid_n << " arrows)\n";
  return vfield::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vfield: vector-field motion plans for unicycle robots"};
  app.require_subcommand(1);

  double lambda = 2.0, px = 1.0, py = 0.0;
  std::vector<double> bounds;
  int grid_n = 25;
  std::string plot_out;
  auto* plot = app.add_subcommand("field-plot", "Quiver plot of one member of the field family");
  plot->add_option("--lambda", lambda, "Field parameter lambda")->required();
  plot->add_option("--px", px, "x component of p")->required();
  plot->add_option("--py", py, "y component of p")->required();
  plot->add_option("--bounds", bounds, "xmin xmax ymin ymax")->expected(4);
  plot->add_option("--grid", grid_n, "Arrows per side");
  plot->add_option("-o,--output", plot_out, "Output SVG path")->required();

  std::string run_file, run_dir;
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "Run a scenario and write CSV logs and plots");
  run->add_option("scenario", run_file, "Scenario file")->required();
  run->add_option("-o,--output", run_dir, "Output directory")->required();
  run->add_option("--seed", seed, "Override the scenario seed");

  std::string check_file;
  auto* check = app.add_subcommand("validate", "Load and validate a scenario");
  check->add_option("scenario", check_file, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : vfield::kExitValidation;
  }

  try {
    if (*plot) return field_plot(lambda, px, py, bounds, grid_n, plot_out);
    if (*run) {
      vfield::Scenario sc = vfield::load_scenario(run_file);
      if (seed) sc.seed = *seed;
      return vfield::run_scenario(sc, run_dir, std::cout);
    }
    if (*check) {
      const vfield::Scenario sc = vfield::load_scenario(check_file);
      std::cout << check_file << ": ok (" << vfield::to_string(sc.mode) << ")\n";
      return vfield::kExitOk;
    }
  } catch (const vfield::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return vfield::kExitValidation;
  } catch (const vfield::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return vfield::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return vfield::kExitFailure;
  }
  return vfield::kExitFailure;
}
