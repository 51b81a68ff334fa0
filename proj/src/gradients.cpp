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

#include "gradients.hpp"

#include <algorithm>

#include "errors.hpp"
#include "parallel.hpp"

namespace qwell {

LossAndGradient loss_gradients(const MlpNetwork& net, const EnergyParam& energy,
                               const ProblemSpec& problem,
                               const CollocationGrid& grid, double lambda_norm) {
  if (grid.points.empty()) throw ConfigError("loss_gradients: empty grid");
  if (grid.points.size() < 2) {
    throw ConfigError("loss_gradients: grid needs at least 2 points");
  }

  const std::size_t n = grid.points.size();
  const std::span<const double> points(grid.points);
  const std::size_t n_chunks = (n + kChunkSize - 1) / kChunkSize;

  std::vector<ForwardTrace> traces(n_chunks);
  std::vector<SecondOrderJet> envelope(n);
  std::vector<double> potential(n);
  std::vector<double> r(n);
  std::vector<double> psi(n);

  for_each_chunk(n_chunks, [&](std::size_t c) {
    const std::size_t begin = c * kChunkSize;
    const std::size_t end = std::min(n, begin + kChunkSize);
    traces[c] = forward_trace(net, points.subspan(begin, end - begin));
    for (std::size_t i = begin; i < end; ++i) {
      const double x = points[i];
      envelope[i] = envelope_jet(problem.envelope, x);
      potential[i] = potential_eval(problem.potential, x);
      const SecondOrderJet j = envelope[i] * traces[c].output().at(0, i - begin);
      r[i] = residual_at(j, energy.value, potential[i]);
      psi[i] = j.value;
    }
  });

  LossAndGradient out;
  out.loss = assemble_loss(r, psi, grid, lambda_norm);

  const double integral = norm_integral(psi, grid);
  const double dl_dintegral = lambda_norm * 2.0 * (integral - 1.0);
  const double pde_scale = 2.0 / static_cast<double>(n);

  std::vector<ParameterGradient> partial(
      n_chunks, ParameterGradient::zeros_like(net, energy.trainable()));

  for_each_chunk(n_chunks, [&](std::size_t c) {
    const std::size_t begin = c * kChunkSize;
    const std::size_t end = std::min(n, begin + kChunkSize);
    JetBlock g_out(1, end - begin);
    double energy_grad = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t p = i - begin;
      const double g_d2 = pde_scale * r[i];
      const double g_value = pde_scale * r[i] * (energy.value - potential[i]) +
                             dl_dintegral * 2.0 * trapezoid_weight(grid, i) * psi[i];
      const SecondOrderJet& b = envelope[i];
      g_out.value[p] = b.value * g_value + b.d2 * g_d2;
      g_out.d1[p] = 2.0 * b.d1 * g_d2;
      g_out.d2[p] = b.value * g_d2;
      energy_grad += pde_scale * r[i] * psi[i];
    }
    backward_trace(net, traces[c], g_out, partial[c]);
    if (energy.trainable()) partial[c].energy_grad = energy_grad;
  });

  out.grad = std::move(partial[0]);
  for (std::size_t c = 1; c < n_chunks; ++c) out.grad += partial[c];
  return out;
}

}  // namespace qwell
