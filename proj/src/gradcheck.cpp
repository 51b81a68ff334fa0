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

#include "gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "gradients.hpp"
#include "loss.hpp"

namespace qwell {

double relative_error(double analytic, double numeric, double floor) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / scale;
}

GradcheckReport gradcheck(const MlpNetwork& net, const EnergyParam& energy,
                          const ProblemSpec& problem, int n_points,
                          double lambda_norm, double h) {
  const CollocationGrid grid = make_grid(problem.domain, n_points);
  const LossAndGradient lg = loss_gradients(net, energy, problem, grid, lambda_norm);

  MlpNetwork probe = net;
  EnergyParam probe_energy = energy;
  auto loss_at = [&] {
    return total_loss(probe, probe_energy, problem, grid, lambda_norm).total;
  };
  auto central = [&](double& param) {
    const double saved = param;
    param = saved + h;
    const double up = loss_at();
    param = saved - h;
    const double down = loss_at();
    param = saved;
    return (up - down) / (2.0 * h);
  };

  GradcheckReport report;
  for (std::size_t l = 0; l < probe.layers.size(); ++l) {
    GradcheckGroup weights{"layer" + std::to_string(l) + ".weights", 0, 0.0};
    for (std::size_t k = 0; k < probe.layers[l].weights.size(); ++k) {
      const double numeric = central(probe.layers[l].weights[k]);
      weights.max_rel_error = std::max(
          weights.max_rel_error, relative_error(lg.grad.weight_grads[l][k], numeric));
      ++weights.count;
    }
    GradcheckGroup biases{"layer" + std::to_string(l) + ".biases", 0, 0.0};
    for (std::size_t k = 0; k < probe.layers[l].biases.size(); ++k) {
      const double numeric = central(probe.layers[l].biases[k]);
      biases.max_rel_error = std::max(
          biases.max_rel_error, relative_error(lg.grad.bias_grads[l][k], numeric));
      ++biases.count;
    }
    report.groups.push_back(weights);
    report.groups.push_back(biases);
  }
  if (energy.trainable()) {
    const double numeric = central(probe_energy.value);
    report.groups.push_back(
        {"energy", 1, relative_error(lg.grad.energy_grad.value_or(0.0), numeric)});
  }
  for (const auto& g : report.groups) {
    report.parameter_count += g.count;
    report.max_rel_error = std::max(report.max_rel_error, g.max_rel_error);
  }
  return report;
}

GradcheckReport gradcheck(std::uint64_t seed, std::span<const int> layer_sizes,
                          int n_points) {
  MlpNetwork net = init_network(layer_sizes, seed);
  if (net.parameter_count() > kGradcheckMaxParameters) {
    throw ConfigError("gradcheck is limited to " +
                      std::to_string(kGradcheckMaxParameters) + " parameters, got " +
                      std::to_string(net.parameter_count()));
  }
  const ProblemSpec problem = preset("finite-well");
  return gradcheck(net, problem.energy_init, problem, n_points);
}

}  // namespace qwell
