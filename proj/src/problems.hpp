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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "jet.hpp"
#include "network.hpp"

namespace qwell {

struct Domain {
  double a = 0.0;
  double b = 1.0;

  double length() const { return b - a; }
};

struct PotentialSegment {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double v = 0.0;
};

/// Piecewise-constant potential in units of 2mV/hbar^2.
///
/// Segments are sorted and non-overlapping. Each segment covers
/// [x_lo, x_hi) except the last, which covers [x_lo, x_hi]. Points outside
/// every segment take `default_value`.
struct PiecewisePotential {
  std::vector<PotentialSegment> segments;
  double default_value = 0.0;

  /// Throws ConfigError if segments are unsorted, overlapping or empty.
  void validate() const;
};

double potential_eval(const PiecewisePotential& p, double x);

/// B(x) = (b - x)(x - a), vanishing exactly at both domain ends.
struct BoundaryEnvelope {
  double a = 0.0;
  double b = 1.0;
};

SecondOrderJet envelope_jet(const BoundaryEnvelope& env, double x);

/// psi = B * N with the jet product rule.
SecondOrderJet trial_jet(const BoundaryEnvelope& env, const MlpNetwork& net,
                         double x);

struct CollocationGrid {
  std::vector<double> points;
  double spacing = 0.0;
};

/// n uniformly spaced points including both endpoints.
CollocationGrid make_grid(const Domain& domain, int n);

struct ProblemSpec {
  std::string name;
  Domain domain;
  PiecewisePotential potential;
  BoundaryEnvelope envelope;
  EnergyParam energy_init;
  std::vector<int> layer_sizes;
  int n_collocation = 0;

  /// Throws ConfigError when any field violates its invariant.
  void validate() const;
};

/// "infinite-well", "finite-well" or "barrier".
ProblemSpec preset(std::string_view name);

std::vector<std::string> preset_names();

}  // namespace qwell
