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

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "errors.hpp"
#include "jet.hpp"
#include "network.hpp"

using namespace qwell;

namespace {

double network_value(const MlpNetwork& net, double x) { return forward_jet(net, x).value; }

double rel_err(double a, double b, double floor) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace

TEST_CASE("jet product rule") {
  const SecondOrderJet u{1.5, -0.25, 3.0};
  const SecondOrderJet v{-2.0, 0.75, 0.5};
  const SecondOrderJet w = u * v;
  CHECK(w.value == doctest::Approx(-3.0));
  CHECK(w.d1 == doctest::Approx(-0.25 * -2.0 + 1.5 * 0.75));
  CHECK(w.d2 == doctest::Approx(3.0 * -2.0 + 2.0 * -0.25 * 0.75 + 1.5 * 0.5));

  const auto s = SecondOrderJet::seed(0.3);
  CHECK(s.value == 0.3);
  CHECK(s.d1 == 1.0);
  CHECK(s.d2 == 0.0);
}

TEST_CASE("jet of x^3 and tanh(x^2) match closed forms") {
  const double x = 0.7;
  const auto X = SecondOrderJet::seed(x);
  const auto cube = X * X * X;
  CHECK(cube.value == doctest::Approx(x * x * x).epsilon(1e-15));
  CHECK(cube.d1 == doctest::Approx(3 * x * x).epsilon(1e-15));
  CHECK(cube.d2 == doctest::Approx(6 * x).epsilon(1e-15));

  // d/dx tanh(x^2) = 2x sech^2, d2 = 2 sech^2 - 8x^2 tanh sech^2
  const auto t = tanh(X * X);
  const double th = std::tanh(x * x);
  const double sech2 = 1.0 - th * th;
  CHECK(t.value == doctest::Approx(th));
  CHECK(t.d1 == doctest::Approx(2 * x * sech2).epsilon(1e-14));
  CHECK(t.d2 == doctest::Approx(2 * sech2 - 8 * x * x * th * sech2).epsilon(1e-14));
}

TEST_CASE("init_network shapes") {
  const std::vector<int> small{1, 20, 20, 1};
  const auto a = init_network(small, 42);
  REQUIRE(a.layers.size() == 3);
  CHECK(a.layers[0].out == 20);
  CHECK(a.layers[0].in == 1);
  CHECK(a.layers[1].weights.size() == 400);
  CHECK(a.layers[2].out == 1);
  CHECK(a.layers[2].in == 20);
  CHECK(a.parameter_count() == 20 + 20 + 400 + 20 + 20 + 1);

  const std::vector<int> big{1, 40, 40, 1};
  const auto b = init_network(big, 0);
  CHECK(b.layers[0].weights.size() == 40);
  CHECK(b.layers[1].weights.size() == 1600);
  CHECK(b.layers[2].weights.size() == 40);
  CHECK(b.layers[2].biases.size() == 1);
}

TEST_CASE("init_network is deterministic and seed-sensitive") {
  const std::vector<int> sizes{1, 20, 20, 1};
  const auto a = init_network(sizes, 42);
  const auto b = init_network(sizes, 42);
  const auto c = init_network(sizes, 43);
  for (std::size_t l = 0; l < a.layers.size(); ++l) {
    CHECK(a.layers[l].weights == b.layers[l].weights);
    CHECK(a.layers[l].biases == b.layers[l].biases);
  }
  CHECK(a.layers[0].weights != c.layers[0].weights);
}

TEST_CASE("init ranges per scheme") {
  const std::vector<int> sizes{1, 40, 40, 1};
  const auto fan = init_network(sizes, 3, InitScheme::FanInUniform);
  for (const auto& layer : fan.layers) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer.in));
    for (double w : layer.weights) CHECK(std::abs(w) <= bound);
    for (double b : layer.biases) CHECK(std::abs(b) <= bound);
  }
  const auto glorot = init_network(sizes, 3, InitScheme::GlorotUniform);
  for (const auto& layer : glorot.layers) {
    const double bound = std::sqrt(6.0 / static_cast<double>(layer.in + layer.out));
    for (double w : layer.weights) CHECK(std::abs(w) <= bound);
    for (double b : layer.biases) CHECK(b == 0.0);
  }
  CHECK(parse_init_scheme("glorot-uniform") == InitScheme::GlorotUniform);
  CHECK(std::string(init_scheme_name(InitScheme::FanInUniform)) == "fan-in-uniform");
  CHECK_THROWS_AS(parse_init_scheme("he-normal"), ConfigError);
}

TEST_CASE("init_network rejects invalid sizes") {
  CHECK_THROWS_AS(init_network(std::vector<int>{}, 0), ConfigError);
  CHECK_THROWS_AS(init_network(std::vector<int>{1, 1}, 0), ConfigError);
  CHECK_THROWS_AS(init_network(std::vector<int>{2, 4, 1}, 0), ConfigError);
  CHECK_THROWS_AS(init_network(std::vector<int>{1, 4, 2}, 0), ConfigError);
  CHECK_THROWS_AS(init_network(std::vector<int>{1, 0, 1}, 0), ConfigError);
  CHECK_THROWS_AS(init_network(std::vector<int>{1, -3, 1}, 0), ConfigError);
}

TEST_CASE("zero-weight network is constant") {
  auto net = init_network(std::vector<int>{1, 5, 5, 1}, 1);
  for (auto& layer : net.layers) {
    for (double& w : layer.weights) w = 0.0;
  }
  const double expected = net.layers.back().biases[0];
  for (double x : {-2.0, 0.0, 0.4, 3.0}) {
    const auto j = forward_jet(net, x);
    CHECK(j.value == expected);
    CHECK(j.d1 == 0.0);
    CHECK(j.d2 == 0.0);
  }
}

TEST_CASE("forward_jet derivatives against finite differences") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> xdist(-3.0, 3.0);
  double worst1 = 0.0;
  double worst2 = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = init_network(std::vector<int>{1, 12, 12, 1}, 100 + trial);
    const double x = xdist(rng);
    const auto j = forward_jet(net, x);
    const double h1 = 1e-5;
    const double fd1 = (network_value(net, x + h1) - network_value(net, x - h1)) / (2 * h1);
    const double h2 = 1e-4;
    const double fd2 = (network_value(net, x + h2) - 2 * network_value(net, x) +
                        network_value(net, x - h2)) /
                       (h2 * h2);
    worst1 = std::max(worst1, rel_err(j.d1, fd1, 1e-3));
    worst2 = std::max(worst2, rel_err(j.d2, fd2, 1e-2));
  }
  CHECK(worst1 < 1e-6);
  CHECK(worst2 < 1e-4);
}

TEST_CASE("batched trace matches pointwise jets") {
  const auto net = init_network(std::vector<int>{1, 9, 7, 1}, 5);
  const std::vector<double> xs{-1.0, -0.3, 0.0, 0.25, 2.0};
  const auto trace = forward_trace(net, xs);
  const auto& out = trace.output();
  REQUIRE(out.cols == xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto j = forward_jet(net, xs[i]);
    CHECK(out.at(0, i).value == j.value);
    CHECK(out.at(0, i).d1 == j.d1);
    CHECK(out.at(0, i).d2 == j.d2);
  }
}

TEST_CASE("parameter gradient accumulation") {
  const auto net = init_network(std::vector<int>{1, 3, 1}, 0);
  auto a = ParameterGradient::zeros_like(net, true);
  auto b = ParameterGradient::zeros_like(net, true);
  b.weight_grads[0][1] = 2.0;
  *b.energy_grad = 0.5;
  a += b;
  a += b;
  CHECK(a.weight_grads[0][1] == 4.0);
  CHECK(*a.energy_grad == 1.0);
  CHECK(a.all_finite());
  a.bias_grads[1][0] = std::nan("");
  CHECK_FALSE(a.all_finite());

  const auto other = init_network(std::vector<int>{1, 4, 1}, 0);
  auto mismatched = ParameterGradient::zeros_like(other, true);
  CHECK_THROWS_AS(a += mismatched, InternalError);
}
