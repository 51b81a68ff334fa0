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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "network.hpp"
#include "problems.hpp"

namespace qwell {

inline constexpr std::size_t kGradcheckMaxParameters = 500;

struct GradcheckGroup {
  std::string name;  // "layer0.weights", "layer1.biases", "energy", ...
  std::size_t count = 0;
  double max_rel_error = 0.0;
};

struct GradcheckReport {
  std::vector<GradcheckGroup> groups;
  std::size_t parameter_count = 0;
  double max_rel_error = 0.0;
};

/// |analytic - numeric| / max(|analytic|, |numeric|, floor).
double relative_error(double analytic, double numeric, double floor = 1e-6);

/// Compare loss_gradients against central differences of total_loss with
/// step h, over every parameter and (if trainable) the energy.
GradcheckReport gradcheck(const MlpNetwork& net, const EnergyParam& energy,
                          const ProblemSpec& problem, int n_points,
                          double lambda_norm = 1.0, double h = 1e-6);

/// The sweep used by the CLI: finite-well potential and domain, a seeded
/// network, trainable energy. Rejects networks with more
/// than kGradcheckMaxParameters parameters.
GradcheckReport gradcheck(std::uint64_t seed, std::span<const int> layer_sizes,
                          int n_points);

}  // namespace qwell
