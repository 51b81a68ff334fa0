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

#include "trainer.hpp"

#include <cmath>
#include <string>

#include "gradients.hpp"

namespace qwell {

namespace {

struct AdamCoefficients {
  double beta1;
  double beta2;
  double correction1;  // 1 - beta1^t
  double correction2;  // 1 - beta2^t
  double lr;
  double eps;
};

void adam_update(double& param, double& m, double& v, double g,
                 const AdamCoefficients& c) {
  m = c.beta1 * m + (1.0 - c.beta1) * g;
  v = c.beta2 * v + (1.0 - c.beta2) * g * g;
  const double m_hat = m / c.correction1;
  const double v_hat = v / c.correction2;
  param -= c.lr * m_hat / (std::sqrt(v_hat) + c.eps);
}

void adam_block(std::vector<double>& params, std::vector<double>& m,
                std::vector<double>& v, const std::vector<double>& g,
                const AdamCoefficients& c) {
  if (params.size() != g.size() || m.size() != g.size() || v.size() != g.size()) {
    throw InternalError("adam_step: shape mismatch");
  }
  for (std::size_t k = 0; k < params.size(); ++k) {
    adam_update(params[k], m[k], v[k], g[k], c);
  }
}

TrainingRecord make_record(int epoch, double energy, const LossBreakdown& loss) {
  return {epoch, energy, loss.l_pde, loss.l_norm, loss.total};
}

}  // namespace

void TrainingConfig::validate() const {
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning_rate must be positive");
  }
  if (!(lambda_norm >= 0.0) || !std::isfinite(lambda_norm)) {
    throw ConfigError("lambda_norm must be non-negative");
  }
  if (log_interval < 1) throw ConfigError("log_interval must be >= 1");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0)) {
    throw ConfigError("adam_beta1 must lie in [0, 1)");
  }
  if (!(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) {
    throw ConfigError("adam_beta2 must lie in [0, 1)");
  }
  if (!(adam_epsilon > 0.0)) throw ConfigError("adam_epsilon must be positive");
}

AdamState AdamState::for_network(const MlpNetwork& net) {
  AdamState s;
  for (const auto& layer : net.layers) {
    s.m_weights.emplace_back(layer.weights.size(), 0.0);
    s.v_weights.emplace_back(layer.weights.size(), 0.0);
    s.m_biases.emplace_back(layer.biases.size(), 0.0);
    s.v_biases.emplace_back(layer.biases.size(), 0.0);
  }
  return s;
}

void adam_step(AdamState& state, MlpNetwork& net, EnergyParam& energy,
               const ParameterGradient& grad, const TrainingConfig& cfg) {
  const std::size_t n_layers = net.layers.size();
  if (state.m_weights.size() != n_layers || grad.weight_grads.size() != n_layers ||
      grad.bias_grads.size() != n_layers) {
    throw InternalError("adam_step: layer count mismatch");
  }
  ++state.step_count;
  const double t = static_cast<double>(state.step_count);
  const AdamCoefficients c{cfg.adam_beta1,
                           cfg.adam_beta2,
                           1.0 - std::pow(cfg.adam_beta1, t),
                           1.0 - std::pow(cfg.adam_beta2, t),
                           cfg.learning_rate,
                           cfg.adam_epsilon};
  for (std::size_t l = 0; l < n_layers; ++l) {
    adam_block(net.layers[l].weights, state.m_weights[l], state.v_weights[l],
               grad.weight_grads[l], c);
    adam_block(net.layers[l].biases, state.m_biases[l], state.v_biases[l],
               grad.bias_grads[l], c);
  }
  if (energy.trainable() && grad.energy_grad) {
    adam_update(energy.value, state.m_energy, state.v_energy, *grad.energy_grad, c);
  }
}

TrainedModel train(const ProblemSpec& problem, const TrainingConfig& cfg) {
  problem.validate();
  cfg.validate();

  const CollocationGrid grid = make_grid(problem.domain, problem.n_collocation);
  TrainedModel model;
  model.problem = problem;
  model.config = cfg;
  model.network = init_network(problem.layer_sizes, cfg.seed, cfg.init);
  model.energy = problem.energy_init;

  AdamState state = AdamState::for_network(model.network);
  TrainingRecord last_good;
  bool have_good = false;

  constexpr int kWindow = 500;
  int window_changes = 0;
  int last_direction = 0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const LossAndGradient lg =
        loss_gradients(model.network, model.energy, problem, grid, cfg.lambda_norm);
    if (!std::isfinite(lg.loss.total) || !lg.grad.all_finite()) {
      if (!have_good) last_good = make_record(epoch, model.energy.value, lg.loss);
      throw TrainingDivergedError(
          "training diverged at epoch " + std::to_string(epoch) +
              " (non-finite loss or gradient)",
          last_good, model.history);
    }
    last_good = make_record(epoch, model.energy.value, lg.loss);
    have_good = true;
    if (epoch % cfg.log_interval == 0) model.history.push_back(last_good);

    const double before = model.energy.value;
    adam_step(state, model.network, model.energy, lg.grad, cfg);
    const double step = model.energy.value - before;

    auto& diag = model.diagnostics;
    diag.max_energy_step = std::max(diag.max_energy_step, std::abs(step));
    const int direction = (step > 0.0) - (step < 0.0);
    if (direction != 0) {
      if (last_direction != 0 && direction != last_direction) ++window_changes;
      last_direction = direction;
    }
    if ((epoch + 1) % kWindow == 0 || epoch + 1 == cfg.epochs) {
      diag.max_direction_changes = std::max(diag.max_direction_changes, window_changes);
      window_changes = 0;
    }
  }

  const LossBreakdown final_loss =
      total_loss(model.network, model.energy, problem, grid, cfg.lambda_norm);
  if (!std::isfinite(final_loss.total)) {
    throw TrainingDivergedError("training diverged after the final update",
                                last_good, model.history);
  }
  model.history.push_back(make_record(cfg.epochs, model.energy.value, final_loss));
  return model;
}

WavefunctionSample sample_wavefunction(const TrainedModel& model, int n) {
  const CollocationGrid grid = make_grid(model.problem.domain, n);
  const auto jets = trial_jets(model.problem.envelope, model.network, grid.points);
  WavefunctionSample out;
  out.x = grid.points;
  out.psi.resize(jets.size());
  for (std::size_t i = 0; i < jets.size(); ++i) out.psi[i] = jets[i].value;

  const double integral = norm_integral(out.psi, grid);
  if (!(integral >= 1e-12)) {
    throw ZeroWavefunctionError("wavefunction norm is numerically zero");
  }
  const double scale = 1.0 / std::sqrt(integral);
  for (double& v : out.psi) v *= scale;
  canonicalize_sign(out.psi);
  return out;
}

}  // namespace qwell
