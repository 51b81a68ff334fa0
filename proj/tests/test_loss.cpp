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
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "loss.hpp"
#include "problems.hpp"

using namespace qwell;

namespace {

constexpr double kPi = std::numbers::pi;

TrialFunction scaled_sine(double amplitude) {
  return [amplitude](double x) {
    const double s = std::sin(kPi * x);
    const double c = std::cos(kPi * x);
    return SecondOrderJet{amplitude * s, amplitude * kPi * c, -amplitude * kPi * kPi * s};
  };
}

MlpNetwork zero_output_network(const std::vector<int>& sizes) {
  auto net = init_network(sizes, 11);
  for (double& w : net.layers.back().weights) w = 0.0;
  for (double& b : net.layers.back().biases) b = 0.0;
  return net;
}

}  // namespace

TEST_CASE("residuals of closed-form sine") {
  const PiecewisePotential zero{{}, 0.0};
  const auto grid = make_grid({0.0, 1.0}, 101);
  const auto r = residuals(scaled_sine(1.0), kPi * kPi, zero, grid);
  for (double v : r) CHECK(std::abs(v) < 1e-12);

  const auto r0 = residuals(scaled_sine(1.0), 0.0, zero, grid);
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    CHECK(r0[i] == doctest::Approx(-kPi * kPi * std::sin(kPi * grid.points[i])));
  }
}

TEST_CASE("residuals are affine in the energy") {
  const auto p = preset("finite-well");
  const auto net = init_network(p.layer_sizes, 3);
  const auto grid = make_grid(p.domain, 50);
  const auto r1 = residuals(net, {EnergyMode::Trainable, 2.5}, p, grid);
  const auto r2 = residuals(net, {EnergyMode::Trainable, 0.5}, p, grid);
  const auto psi = trial_jets(p.envelope, net, grid.points);
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i] - r2[i] == doctest::Approx(2.0 * psi[i].value).epsilon(1e-12));
  }
}

TEST_CASE("zero network has zero residual and unit loss") {
  const auto p = preset("finite-well");
  const auto net = zero_output_network(p.layer_sizes);
  const auto grid = make_grid(p.domain, p.n_collocation);
  for (double r : residuals(net, p.energy_init, p, grid)) CHECK(r == 0.0);
  CHECK(norm_integral(net, p, grid) == 0.0);
  const auto loss = total_loss(net, p.energy_init, p, grid);
  CHECK(loss.l_pde == 0.0);
  CHECK(loss.l_norm == 1.0);
  CHECK(loss.total == 1.0);
}

TEST_CASE("pde_loss") {
  CHECK(pde_loss(std::vector<double>{0, 0, 0}) == 0.0);
  CHECK(pde_loss(std::vector<double>{1, -1}) == 1.0);
  CHECK(pde_loss(std::vector<double>{3}) == 9.0);
  CHECK_THROWS_AS(pde_loss(std::vector<double>{}), ConfigError);
}

TEST_CASE("norm_integral") {
  const auto g = make_grid({-3.0, 3.0}, 200);
  CHECK(norm_integral(std::vector<double>(200, 0.0), g) == 0.0);
  CHECK(norm_integral(std::vector<double>(200, 1.0), g) == 6.0);

  const auto unit = make_grid({0.0, 1.0}, 101);
  std::vector<double> psi;
  for (double x : unit.points) psi.push_back(std::sqrt(2.0) * std::sin(kPi * x));
  CHECK(std::abs(norm_integral(psi, unit) - 1.0) < 1e-4);

  CollocationGrid single;
  single.points = {0.0};
  CHECK_THROWS_AS(norm_integral(std::vector<double>{1.0}, single), ConfigError);
}

TEST_CASE("trapezoid error is second order") {
  // psi^2 = e^{2x} on [0, 1] has integral (e^2 - 1)/2.
  const double exact = (std::exp(2.0) - 1.0) / 2.0;
  std::vector<double> errors;
  for (int n : {11, 21, 41, 81}) {
    const auto g = make_grid({0.0, 1.0}, n);
    std::vector<double> psi;
    for (double x : g.points) psi.push_back(std::exp(x));
    errors.push_back(std::abs(norm_integral(psi, g) - exact));
  }
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    const double ratio = errors[i] / errors[i + 1];
    CHECK(ratio > 3.9);
    CHECK(ratio < 4.1);
  }
}

TEST_CASE("norm_loss") {
  CHECK(norm_loss(1.0) == 0.0);
  CHECK(norm_loss(0.0) == 1.0);
  CHECK(norm_loss(2.0) == 1.0);
}

TEST_CASE("total is the weighted sum bit for bit") {
  const auto b = make_breakdown(0.2, 0.4, 0.5);
  CHECK(b.total == 0.2 + 0.5 * 0.4);
  CHECK(b.total == doctest::Approx(0.4));
  CHECK(b.lambda_norm == 0.5);

  const auto p = preset("barrier");
  const auto net = init_network(p.layer_sizes, 8);
  const auto grid = make_grid(p.domain, p.n_collocation);
  for (double lambda : {0.0, 0.3, 1.0, 7.0}) {
    const auto loss = total_loss(net, p.energy_init, p, grid, lambda);
    CHECK(loss.total == loss.l_pde + lambda * loss.l_norm);
    CHECK(loss.l_pde >= 0.0);
    CHECK(loss.l_norm >= 0.0);
  }
}

TEST_CASE("analytic ground state of the infinite well has near-zero loss") {
  const PiecewisePotential zero{{}, 0.0};
  const auto grid = make_grid({0.0, 1.0}, 100);
  const auto loss = total_loss(scaled_sine(std::sqrt(2.0)), kPi * kPi, zero, grid, 1.0);
  CHECK(loss.total < 1e-6);
}

TEST_CASE("normalization penalty breaks the scaling degeneracy") {
  // Normalized sine with a slightly wrong energy, so l_pde > 0.
  const PiecewisePotential zero{{}, 0.0};
  const auto grid = make_grid({0.0, 1.0}, 101);
  const double energy = kPi * kPi + 0.8;
  std::vector<double> raw;
  for (double x : grid.points) raw.push_back(std::sqrt(2.0) * std::sin(kPi * x));
  const double amp = std::sqrt(2.0) / std::sqrt(norm_integral(raw, grid));

  const auto base = total_loss(scaled_sine(amp), energy, zero, grid, 1.0);
  REQUIRE(std::abs(base.l_norm) < 1e-24);
  const double l_pde = base.l_pde;
  REQUIRE(l_pde > 0.0);
  REQUIRE(l_pde < 2.0);

  double best_c = 0.0;
  double best_total = 1e300;
  for (int k = 0; k <= 2000; ++k) {
    const double c = k / 2000.0;
    const auto loss = total_loss(scaled_sine(c * amp), energy, zero, grid, 1.0);
    const double predicted = c * c * l_pde + (c * c - 1.0) * (c * c - 1.0);
    CHECK(loss.total == doctest::Approx(predicted).epsilon(1e-9));
    if (loss.total < best_total) {
      best_total = loss.total;
      best_c = c;
    }
  }
  CHECK(best_c * best_c == doctest::Approx(1.0 - l_pde / 2.0).epsilon(1e-3));
  CHECK(best_total < 1.0);
  const auto at_zero = total_loss(scaled_sine(0.0), energy, zero, grid, 1.0);
  CHECK(at_zero.total == 1.0);

  // Without the penalty the loss shrinks to zero with the amplitude.
  double previous = 1e300;
  for (double c : {1.0, 0.5, 0.1, 0.01, 0.0}) {
    const auto loss = total_loss(scaled_sine(c * amp), energy, zero, grid, 0.0);
    CHECK(loss.total < previous);
    previous = loss.total;
  }
  CHECK(previous == 0.0);
}

TEST_CASE("sign flip of the network leaves the loss unchanged") {
  const auto p = preset("finite-well");
  const auto net = init_network(p.layer_sizes, 21);
  auto flipped = net;
  for (double& w : flipped.layers.back().weights) w = -w;
  for (double& b : flipped.layers.back().biases) b = -b;
  const auto grid = make_grid(p.domain, p.n_collocation);
  const auto a = total_loss(net, p.energy_init, p, grid);
  const auto b = total_loss(flipped, p.energy_init, p, grid);
  CHECK(a.l_pde == b.l_pde);
  CHECK(a.l_norm == b.l_norm);
}
