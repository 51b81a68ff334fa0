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

#include <functional>
#include <span>
#include <vector>

#include "jet.hpp"
#include "network.hpp"
#include "problems.hpp"

namespace qwell {

struct LossBreakdown {
  double l_pde = 0.0;
  double l_norm = 0.0;
  double lambda_norm = 1.0;
  double total = 0.0;
};

/// Any trial wavefunction given as x -> (psi, psi', psi''). Lets closed-form
/// functions go through the same residual and normalization code as networks.
using TrialFunction = std::function<SecondOrderJet(double)>;

/// Schroedinger residual psi'' + (E - V) psi at one point.
inline double residual_at(const SecondOrderJet& psi, double energy, double v) {
  return psi.d2 + (energy - v) * psi.value;
}

/// Trial jets B*N at every point, evaluated in fixed-size chunks.
std::vector<SecondOrderJet> trial_jets(const BoundaryEnvelope& env,
                                       const MlpNetwork& net,
                                       std::span<const double> points);

std::vector<double> residuals(const TrialFunction& psi, double energy,
                              const PiecewisePotential& potential,
                              const CollocationGrid& grid);
std::vector<double> residuals(const MlpNetwork& net, const EnergyParam& energy,
                              const ProblemSpec& problem,
                              const CollocationGrid& grid);

/// Mean of squares. Throws ConfigError when empty.
double pde_loss(std::span<const double> residuals);

/// Trapezoidal integral of psi^2 over a uniform grid spanning
/// [points.front(), points.back()].
double norm_integral(std::span<const double> psi_values,
                     const CollocationGrid& grid);
double norm_integral(const MlpNetwork& net, const ProblemSpec& problem,
                     const CollocationGrid& grid);

/// Trapezoid weight of point i, so that the integral is sum_i w_i f_i.
double trapezoid_weight(const CollocationGrid& grid, std::size_t i);

double norm_loss(double integral);

LossBreakdown make_breakdown(double l_pde, double l_norm, double lambda_norm);

LossBreakdown total_loss(const TrialFunction& psi, double energy,
                         const PiecewisePotential& potential,
                         const CollocationGrid& grid, double lambda_norm = 1.0);
LossBreakdown total_loss(const MlpNetwork& net, const EnergyParam& energy,
                         const ProblemSpec& problem, const CollocationGrid& grid,
                         double lambda_norm = 1.0);

/// Shared final assembly from per-point residuals and psi values; both the
/// plain loss and the gradient path go through here.
LossBreakdown assemble_loss(std::span<const double> residuals,
                            std::span<const double> psi_values,
                            const CollocationGrid& grid, double lambda_norm);

}  // namespace qwell
