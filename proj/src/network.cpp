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

#include "network.hpp"

#include <cmath>
#include <random>
#include <string>

#include "errors.hpp"

namespace qwell {

namespace {

// Top 53 bits of the engine output mapped to [0, 1). Unlike
// std::uniform_real_distribution this is identical across standard libraries.
double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

void affine_forward(const DenseLayer& layer, const JetBlock& in, JetBlock& out) {
  const std::size_t n = in.cols;
  for (std::size_t i = 0; i < layer.out; ++i) {
    double* z0 = &out.value[i * n];
    double* z1 = &out.d1[i * n];
    double* z2 = &out.d2[i * n];
    const double b = layer.biases[i];
    for (std::size_t p = 0; p < n; ++p) {
      z0[p] = b;
      z1[p] = 0.0;
      z2[p] = 0.0;
    }
    for (std::size_t j = 0; j < layer.in; ++j) {
      const double w = layer.weights[i * layer.in + j];
      const double* a0 = &in.value[j * n];
      const double* a1 = &in.d1[j * n];
      const double* a2 = &in.d2[j * n];
      for (std::size_t p = 0; p < n; ++p) {
        z0[p] += w * a0[p];
        z1[p] += w * a1[p];
        z2[p] += w * a2[p];
      }
    }
  }
}

// Elementwise tanh on a jet block, matching qwell::tanh(SecondOrderJet).
void tanh_forward(const JetBlock& z, JetBlock& a) {
  for (std::size_t k = 0; k < z.value.size(); ++k) {
    const double t = std::tanh(z.value[k]);
    const double s = 1.0 - t * t;
    a.value[k] = t;
    a.d1[k] = s * z.d1[k];
    a.d2[k] = s * z.d2[k] - 2.0 * t * s * z.d1[k] * z.d1[k];
  }
}

// Given dL/da for a = tanh(z) (all three jet slots), overwrite with dL/dz.
void tanh_backward(const JetBlock& z, const JetBlock& a, JetBlock& g) {
  for (std::size_t k = 0; k < z.value.size(); ++k) {
    const double t = a.value[k];
    const double s = 1.0 - t * t;
    const double z1 = z.d1[k];
    const double z2 = z.d2[k];
    const double ga0 = g.value[k];
    const double ga1 = g.d1[k];
    const double ga2 = g.d2[k];
    const double ds = -2.0 * t * s;         // d s / d z
    const double dts = s * (1.0 - 3.0 * t * t);  // d (t s) / d z
    g.value[k] = ga0 * s + ga1 * z1 * ds + ga2 * (z2 * ds - 2.0 * z1 * z1 * dts);
    g.d1[k] = ga1 * s - ga2 * 4.0 * t * s * z1;
    g.d2[k] = ga2 * s;
  }
}

}  // namespace

std::size_t MlpNetwork::parameter_count() const {
  std::size_t count = 0;
  for (const auto& layer : layers) {
    count += layer.weights.size() + layer.biases.size();
  }
  return count;
}

ParameterGradient ParameterGradient::zeros_like(const MlpNetwork& net,
                                                bool with_energy) {
  ParameterGradient g;
  for (const auto& layer : net.layers) {
    g.weight_grads.emplace_back(layer.weights.size(), 0.0);
    g.bias_grads.emplace_back(layer.biases.size(), 0.0);
  }
  if (with_energy) g.energy_grad = 0.0;
  return g;
}

ParameterGradient& ParameterGradient::operator+=(const ParameterGradient& other) {
  if (weight_grads.size() != other.weight_grads.size() ||
      energy_grad.has_value() != other.energy_grad.has_value()) {
    throw InternalError("gradient shape mismatch");
  }
  for (std::size_t l = 0; l < weight_grads.size(); ++l) {
    if (weight_grads[l].size() != other.weight_grads[l].size() ||
        bias_grads[l].size() != other.bias_grads[l].size()) {
      throw InternalError("gradient shape mismatch");
    }
    for (std::size_t k = 0; k < weight_grads[l].size(); ++k) {
      weight_grads[l][k] += other.weight_grads[l][k];
    }
    for (std::size_t k = 0; k < bias_grads[l].size(); ++k) {
      bias_grads[l][k] += other.bias_grads[l][k];
    }
  }
  if (energy_grad) *energy_grad += *other.energy_grad;
  return *this;
}

bool ParameterGradient::all_finite() const {
  auto finite = [](const std::vector<std::vector<double>>& blocks) {
    for (const auto& block : blocks) {
      for (double v : block) {
        if (!std::isfinite(v)) return false;
      }
    }
    return true;
  };
  return finite(weight_grads) && finite(bias_grads) &&
         (!energy_grad || std::isfinite(*energy_grad));
}

const char* init_scheme_name(InitScheme scheme) {
  switch (scheme) {
    case InitScheme::FanInUniform:
      return "fan-in-uniform";
    case InitScheme::GlorotUniform:
      return "glorot-uniform";
  }
  return "unknown";
}

InitScheme parse_init_scheme(std::string_view name) {
  if (name == "fan-in-uniform") return InitScheme::FanInUniform;
  if (name == "glorot-uniform") return InitScheme::GlorotUniform;
  throw ConfigError("unknown init scheme '" + std::string(name) +
                    "' (expected fan-in-uniform or glorot-uniform)");
}

MlpNetwork init_network(std::span<const int> layer_sizes, std::uint64_t seed,
                        InitScheme scheme) {
  if (layer_sizes.size() < 3) {
    throw ConfigError("layer_sizes needs input, output and at least one hidden layer");
  }
  if (layer_sizes.front() != 1 || layer_sizes.back() != 1) {
    throw ConfigError("layer_sizes must start and end with 1");
  }
  for (int size : layer_sizes) {
    if (size < 1) {
      throw ConfigError("layer size must be positive, got " + std::to_string(size));
    }
  }

  MlpNetwork net;
  net.layer_sizes.assign(layer_sizes.begin(), layer_sizes.end());
  net.seed = seed;
  net.init = scheme;
  std::mt19937_64 gen(seed);
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    DenseLayer layer;
    layer.in = static_cast<std::size_t>(layer_sizes[l]);
    layer.out = static_cast<std::size_t>(layer_sizes[l + 1]);
    const bool glorot = scheme == InitScheme::GlorotUniform;
    const double limit =
        glorot ? std::sqrt(6.0 / static_cast<double>(layer.in + layer.out))
               : 1.0 / std::sqrt(static_cast<double>(layer.in));
    layer.weights.resize(layer.in * layer.out);
    for (double& w : layer.weights) {
      w = limit * (2.0 * unit_uniform(gen) - 1.0);
    }
    layer.biases.assign(layer.out, 0.0);
    if (!glorot) {
      for (double& b : layer.biases) b = limit * (2.0 * unit_uniform(gen) - 1.0);
    }
    net.layers.push_back(std::move(layer));
  }
  return net;
}

ForwardTrace forward_trace(const MlpNetwork& net, std::span<const double> xs) {
  const std::size_t n = xs.size();
  ForwardTrace trace;
  trace.inputs.reserve(net.layers.size());
  trace.preacts.reserve(net.layers.size());

  JetBlock x(1, n);
  for (std::size_t p = 0; p < n; ++p) {
    x.value[p] = xs[p];
    x.d1[p] = 1.0;
  }
  trace.inputs.push_back(std::move(x));

  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const DenseLayer& layer = net.layers[l];
    JetBlock z(layer.out, n);
    affine_forward(layer, trace.inputs[l], z);
    const bool hidden = l + 1 < net.layers.size();
    if (hidden) {
      JetBlock a(layer.out, n);
      tanh_forward(z, a);
      trace.inputs.push_back(std::move(a));
    }
    trace.preacts.push_back(std::move(z));
  }
  return trace;
}

void backward_trace(const MlpNetwork& net, const ForwardTrace& trace,
                    const JetBlock& output_grad, ParameterGradient& grad) {
  const std::size_t n = output_grad.cols;
  JetBlock g = output_grad;  // dL/dz for the current layer
  for (std::size_t l = net.layers.size(); l-- > 0;) {
    const DenseLayer& layer = net.layers[l];
    const JetBlock& a = trace.inputs[l];
    std::vector<double>& gw = grad.weight_grads[l];
    std::vector<double>& gb = grad.bias_grads[l];

    for (std::size_t i = 0; i < layer.out; ++i) {
      const double* g0 = &g.value[i * n];
      const double* g1 = &g.d1[i * n];
      const double* g2 = &g.d2[i * n];
      double bsum = 0.0;
      for (std::size_t p = 0; p < n; ++p) bsum += g0[p];
      gb[i] += bsum;
      for (std::size_t j = 0; j < layer.in; ++j) {
        const double* a0 = &a.value[j * n];
        const double* a1 = &a.d1[j * n];
        const double* a2 = &a.d2[j * n];
        double wsum = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
          wsum += g0[p] * a0[p] + g1[p] * a1[p] + g2[p] * a2[p];
        }
        gw[i * layer.in + j] += wsum;
      }
    }

    if (l == 0) break;

    // Propagate to the previous activation, then through its tanh.
    JetBlock ga(layer.in, n);
    for (std::size_t i = 0; i < layer.out; ++i) {
      for (std::size_t j = 0; j < layer.in; ++j) {
        const double w = layer.weights[i * layer.in + j];
        for (std::size_t p = 0; p < n; ++p) {
          ga.value[j * n + p] += w * g.value[i * n + p];
          ga.d1[j * n + p] += w * g.d1[i * n + p];
          ga.d2[j * n + p] += w * g.d2[i * n + p];
        }
      }
    }
    tanh_backward(trace.preacts[l - 1], a, ga);
    g = std::move(ga);
  }
}

SecondOrderJet forward_jet(const MlpNetwork& net, double x) {
  const double xs[1] = {x};
  const ForwardTrace trace = forward_trace(net, xs);
  return trace.output().at(0, 0);
}

}  // namespace qwell
