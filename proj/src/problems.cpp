/* Copyright 2026 The qwell Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include "problems.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace qwell {

void PiecewisePotential::validate() const {
  if (!std::isfinite(default_value)) {
    throw ConfigError("potential default value must be finite");
  }
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    if (!std::isfinite(s.x_lo) || !std::isfinite(s.x_hi) || !std::isfinite(s.v)) {
      throw ConfigError("potential segment " + std::to_string(i) + " is not finite");
    }
    if (!(s.x_lo < s.x_hi)) {
      throw ConfigError("potential segment " + std::to_string(i) +
                        " must satisfy x_lo < x_hi");
    }
    if (i > 0 && s.x_lo < segments[i - 1].x_hi) {
      throw ConfigError("potential segments must be sorted and non-overlapping");
    }
  }
}

double potential_eval(const PiecewisePotential& p, double x) {
  const std::size_t n = p.segments.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = p.segments[i];
    const bool last = i + 1 == n;
    if (x >= s.x_lo && (x < s.x_hi || (last && x == s.x_hi))) return s.v;
  }
  return p.default_value;
}

SecondOrderJet envelope_jet(const BoundaryEnvelope& env, double x) {
  return {(env.b - x) * (x - env.a), env.a + env.b - 2.0 * x, -2.0};
}

SecondOrderJet trial_jet(const BoundaryEnvelope& env, const MlpNetwork& net,
                         double x) {
  return envelope_jet(env, x) * forward_jet(net, x);
}

CollocationGrid make_grid(const Domain& domain, int n) {
  if (n < 2) {
    throw ConfigError("collocation grid needs at least 2 points, got " +
                      std::to_string(n));
  }
  if (!(domain.a < domain.b)) throw ConfigError("domain must satisfy a < b");
  CollocationGrid grid;
  grid.spacing = domain.length() / static_cast<double>(n - 1);
  grid.points.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    grid.points[static_cast<std::size_t>(i)] =
        domain.a + static_cast<double>(i) * grid.spacing;
  }
  grid.points.back() = domain.b;
  return grid;
}

void ProblemSpec::validate() const {
  if (name.empty()) throw ConfigError("problem name must not be empty");
  if (!std::isfinite(domain.a) || !std::isfinite(domain.b) || !(domain.a < domain.b)) {
    throw ConfigError("domain must be finite with a < b");
  }
  if (envelope.a != domain.a || envelope.b != domain.b) {
    throw ConfigError("envelope endpoints must equal the domain endpoints");
  }
  potential.validate();
  if (!std::isfinite(energy_init.value)) {
    throw ConfigError("initial energy must be finite");
  }
  if (n_collocation < 2) {
    throw ConfigError("n_collocation must be at least 2");
  }
  // Reuses the network's own size validation.
  (void)init_network(layer_sizes, 0);
}

ProblemSpec preset(std::string_view name) {
  ProblemSpec p;
  p.name = std::string(name);
  if (name == "infinite-well") {
    p.domain = {0.0, 1.0};
    p.potential = {{}, 0.0};
    p.energy_init = {EnergyMode::Fixed, std::numbers::pi * std::numbers::pi};
    p.layer_sizes = {1, 20, 20, 1};
    p.n_collocation = 100;
  } else if (name == "finite-well") {
    p.domain = {-3.0, 3.0};
    p.potential = {{{-1.0, 1.0, 0.0}}, 20.0};
    p.energy_init = {EnergyMode::Trainable, 1.0};
    p.layer_sizes = {1, 40, 40, 1};
    p.n_collocation = 200;
  } else if (name == "barrier") {
    p.domain = {-2.5, 2.5};
    p.potential = {{{0.0, 1.0, 10.0}}, 0.0};
    p.energy_init = {EnergyMode::Trainable, 5.0};
    p.layer_sizes = {1, 40, 40, 1};
    p.n_collocation = 200;
  } else {
    throw ConfigError("unknown preset '" + std::string(name) +
                      "' (expected infinite-well, finite-well or barrier)");
  }
  p.envelope = {p.domain.a, p.domain.b};
  return p;
}

std::vector<std::string> preset_names() {
  return {"infinite-well", "finite-well", "barrier"};
}

}  // namespace qwell
