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

#include "loss.hpp"

#include <algorithm>

#include "errors.hpp"
#include "parallel.hpp"

namespace qwell {

namespace {

void check_grid(const CollocationGrid& grid) {
  if (grid.points.size() < 2) {
    throw ConfigError("collocation grid needs at least 2 points");
  }
}

}  // namespace

std::vector<SecondOrderJet> trial_jets(const BoundaryEnvelope& env,
                                       const MlpNetwork& net,
                                       std::span<const double> points) {
  std::vector<SecondOrderJet> out(points.size());
  const std::size_t n_chunks = (points.size() + kChunkSize - 1) / kChunkSize;
  for_each_chunk(n_chunks, [&](std::size_t c) {
    const std::size_t begin = c * kChunkSize;
    const std::size_t end = std::min(points.size(), begin + kChunkSize);
    const auto xs = points.subspan(begin, end - begin);
    const ForwardTrace trace = forward_trace(net, xs);
    for (std::size_t p = 0; p < xs.size(); ++p) {
      out[begin + p] = envelope_jet(env, xs[p]) * trace.output().at(0, p);
    }
  });
  return out;
}

std::vector<double> residuals(const TrialFunction& psi, double energy,
                              const PiecewisePotential& potential,
                              const CollocationGrid& grid) {
  std::vector<double> r;
  r.reserve(grid.points.size());
  for (double x : grid.points) {
    r.push_back(residual_at(psi(x), energy, potential_eval(potential, x)));
  }
  return r;
}

std::vector<double> residuals(const MlpNetwork& net, const EnergyParam& energy,
                              const ProblemSpec& problem,
                              const CollocationGrid& grid) {
  const auto jets = trial_jets(problem.envelope, net, grid.points);
  std::vector<double> r(jets.size());
  for (std::size_t i = 0; i < jets.size(); ++i) {
    r[i] = residual_at(jets[i], energy.value,
                       potential_eval(problem.potential, grid.points[i]));
  }
  return r;
}

double pde_loss(std::span<const double> residuals) {
  if (residuals.empty()) throw ConfigError("pde_loss of an empty residual set");
  double sum = 0.0;
  for (double r : residuals) sum += r * r;
  return sum / static_cast<double>(residuals.size());
}

double trapezoid_weight(const CollocationGrid& grid, std::size_t i) {
  const std::size_t n = grid.points.size();
  const double h = (grid.points.back() - grid.points.front()) /
                   static_cast<double>(n - 1);
  return (i == 0 || i + 1 == n) ? 0.5 * h : h;
}

double norm_integral(std::span<const double> psi_values,
                     const CollocationGrid& grid) {
  check_grid(grid);
  const std::size_t n = psi_values.size();
  if (n != grid.points.size()) {
    throw InternalError("norm_integral: value count does not match the grid");
  }
  double sum = 0.5 * psi_values[0] * psi_values[0];
  for (std::size_t i = 1; i + 1 < n; ++i) sum += psi_values[i] * psi_values[i];
  sum += 0.5 * psi_values[n - 1] * psi_values[n - 1];
  // Equivalent to spacing * sum, but exact for constants.
  return sum * (grid.points.back() - grid.points.front()) /
         static_cast<double>(n - 1);
}

double norm_integral(const MlpNetwork& net, const ProblemSpec& problem,
                     const CollocationGrid& grid) {
  check_grid(grid);
  const auto jets = trial_jets(problem.envelope, net, grid.points);
  std::vector<double> values(jets.size());
  for (std::size_t i = 0; i < jets.size(); ++i) values[i] = jets[i].value;
  return norm_integral(values, grid);
}

double norm_loss(double integral) {
  const double d = integral - 1.0;
  return d * d;
}

LossBreakdown make_breakdown(double l_pde, double l_norm, double lambda_norm) {
  return {l_pde, l_norm, lambda_norm, l_pde + lambda_norm * l_norm};
}

LossBreakdown assemble_loss(std::span<const double> residuals,
                            std::span<const double> psi_values,
                            const CollocationGrid& grid, double lambda_norm) {
  return make_breakdown(pde_loss(residuals),
                        norm_loss(norm_integral(psi_values, grid)), lambda_norm);
}

LossBreakdown total_loss(const TrialFunction& psi, double energy,
                         const PiecewisePotential& potential,
                         const CollocationGrid& grid, double lambda_norm) {
  check_grid(grid);
  std::vector<double> r;
  std::vector<double> values;
  for (double x : grid.points) {
    const SecondOrderJet j = psi(x);
    r.push_back(residual_at(j, energy, potential_eval(potential, x)));
    values.push_back(j.value);
  }
  return assemble_loss(r, values, grid, lambda_norm);
}

LossBreakdown total_loss(const MlpNetwork& net, const EnergyParam& energy,
                         const ProblemSpec& problem, const CollocationGrid& grid,
                         double lambda_norm) {
  check_grid(grid);
  const auto jets = trial_jets(problem.envelope, net, grid.points);
  std::vector<double> r(jets.size());
  std::vector<double> values(jets.size());
  for (std::size_t i = 0; i < jets.size(); ++i) {
    r[i] = residual_at(jets[i], energy.value,
                       potential_eval(problem.potential, grid.points[i]));
    values[i] = jets[i].value;
  }
  return assemble_loss(r, values, grid, lambda_norm);
}

}  // namespace qwell
