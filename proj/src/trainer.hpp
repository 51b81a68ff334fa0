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
#include <vector>

#include "errors.hpp"
#include "loss.hpp"
#include "network.hpp"
#include "problems.hpp"
#include "wavefunction.hpp"

namespace qwell {

struct TrainingConfig {
  int epochs = 5000;
  double learning_rate = 1e-3;
  double lambda_norm = 1.0;
  std::uint64_t seed = 42;
  int log_interval = 500;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  InitScheme init = InitScheme::FanInUniform;

  void validate() const;
};

/// First and second moment accumulators, shaped like the parameter set.
struct AdamState {
  std::vector<std::vector<double>> m_weights;
  std::vector<std::vector<double>> v_weights;
  std::vector<std::vector<double>> m_biases;
  std::vector<std::vector<double>> v_biases;
  double m_energy = 0.0;
  double v_energy = 0.0;
  std::int64_t step_count = 0;

  static AdamState for_network(const MlpNetwork& net);
};

/// One bias-corrected Adam update of every weight, bias and (if the gradient
/// carries one and the energy is trainable) the energy.
void adam_step(AdamState& state, MlpNetwork& net, EnergyParam& energy,
               const ParameterGradient& grad, const TrainingConfig& cfg);

/// State after `epoch` optimizer updates.
struct TrainingRecord {
  int epoch = 0;
  double energy = 0.0;
  double l_pde = 0.0;
  double l_norm = 0.0;
  double total = 0.0;
};

struct TrainingDiagnostics {
  double max_energy_step = 0.0;      // max |E_{k+1} - E_k|
  int max_direction_changes = 0;     // per 500-epoch window
};

struct TrainedModel {
  ProblemSpec problem;
  MlpNetwork network;
  EnergyParam energy;
  std::vector<TrainingRecord> history;
  TrainingConfig config;
  TrainingDiagnostics diagnostics;
};

class TrainingDivergedError : public Error {
 public:
  TrainingDivergedError(const std::string& what, TrainingRecord last_good,
                        std::vector<TrainingRecord> history)
      : Error(what), last_good_(last_good), history_(std::move(history)) {}

  const TrainingRecord& last_good() const { return last_good_; }
  const std::vector<TrainingRecord>& history() const { return history_; }

 private:
  TrainingRecord last_good_;
  std::vector<TrainingRecord> history_;
};

/// Full-batch Adam on the problem's collocation grid. Deterministic under
/// (problem, cfg). Throws TrainingDivergedError on a non-finite loss.
TrainedModel train(const ProblemSpec& problem, const TrainingConfig& cfg);

/// psi on an n-point uniform grid over the domain, rescaled to unit trapezoid
/// norm and sign-canonicalized.
WavefunctionSample sample_wavefunction(const TrainedModel& model, int n);

}  // namespace qwell
