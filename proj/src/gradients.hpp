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

#include "loss.hpp"
#include "network.hpp"
#include "problems.hpp"

namespace qwell {

struct LossAndGradient {
  LossBreakdown loss;
  ParameterGradient grad;
};

/// Total loss and its exact gradient with respect to all weights, biases and,
/// when trainable, the energy. The loss equals total_loss() bit for bit.
///
/// Forward: second-order jets through the network, then psi = B*N and the
/// residual. Reverse: dL/dpsi and dL/dpsi'' per point are pulled back through
/// the envelope product and the jet propagation of every layer. Work is split
/// into kChunkSize-point chunks whose partial gradients are summed in chunk
/// order, so results do not depend on the thread count.
LossAndGradient loss_gradients(const MlpNetwork& net, const EnergyParam& energy,
                               const ProblemSpec& problem,
                               const CollocationGrid& grid,
                               double lambda_norm = 1.0);

}  // namespace qwell
