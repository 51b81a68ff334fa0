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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "jet.hpp"

namespace qwell {

/// Affine map y = W a + b. Weights are row-major with shape (out x in).
struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> weights;
  std::vector<double> biases;

  double weight(std::size_t row, std::size_t col) const {
    return weights[row * in + col];
  }
};

/// Weight initialization. FanInUniform draws weights and biases from
/// U(-1/sqrt(fan_in), +1/sqrt(fan_in)) (the torch.nn.Linear default);
/// GlorotUniform draws weights from U(-sqrt(6/(fan_in+fan_out)), +...) with
/// zero biases.
enum class InitScheme { FanInUniform, GlorotUniform };

const char* init_scheme_name(InitScheme scheme);
/// Throws ConfigError for unknown names.
InitScheme parse_init_scheme(std::string_view name);

/// Fully-connected network R -> R with tanh on every hidden layer and an
/// identity output layer.
struct MlpNetwork {
  std::vector<int> layer_sizes;
  std::vector<DenseLayer> layers;
  std::uint64_t seed = 0;
  InitScheme init = InitScheme::FanInUniform;

  std::size_t parameter_count() const;
};

enum class EnergyMode { Fixed, Trainable };

struct EnergyParam {
  EnergyMode mode = EnergyMode::Trainable;
  double value = 0.0;

  bool trainable() const { return mode == EnergyMode::Trainable; }
};

/// Derivative of a scalar loss with respect to every network parameter and,
/// in trainable mode, the energy.
struct ParameterGradient {
  std::vector<std::vector<double>> weight_grads;
  std::vector<std::vector<double>> bias_grads;
  std::optional<double> energy_grad;

  static ParameterGradient zeros_like(const MlpNetwork& net, bool with_energy);

  /// Elementwise accumulate; shapes must match.
  ParameterGradient& operator+=(const ParameterGradient& other);
  bool all_finite() const;
};

/// Seeded, platform-independent initialization. Throws ConfigError on bad
/// sizes.
MlpNetwork init_network(std::span<const int> layer_sizes, std::uint64_t seed,
                        InitScheme scheme = InitScheme::FanInUniform);

/// (N(x), N'(x), N''(x)) by pushing the identity jet through every layer.
SecondOrderJet forward_jet(const MlpNetwork& net, double x);

/// Structure-of-arrays block of jets: `rows` units by `cols` points.
struct JetBlock {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> value;
  std::vector<double> d1;
  std::vector<double> d2;

  JetBlock() = default;
  JetBlock(std::size_t r, std::size_t c)
      : rows(r), cols(c), value(r * c), d1(r * c), d2(r * c) {}

  SecondOrderJet at(std::size_t row, std::size_t col) const {
    const std::size_t k = row * cols + col;
    return {value[k], d1[k], d2[k]};
  }
};

/// Everything the reverse pass needs from a batched forward evaluation.
struct ForwardTrace {
  // inputs[l] is the jet fed into layer l; preacts[l] is W a + b.
  std::vector<JetBlock> inputs;
  std::vector<JetBlock> preacts;

  const JetBlock& output() const { return preacts.back(); }
};

/// Batched forward pass. Each column is computed independently of the others,
/// so a point's result does not depend on which batch it was evaluated in.
ForwardTrace forward_trace(const MlpNetwork& net, std::span<const double> xs);

/// Reverse accumulation through a forward trace. `output_grad` holds dL/dN,
/// dL/dN', dL/dN'' per point; weight and bias gradients are added to `grad`.
void backward_trace(const MlpNetwork& net, const ForwardTrace& trace,
                    const JetBlock& output_grad, ParameterGradient& grad);

}  // namespace qwell
