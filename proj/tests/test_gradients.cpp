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
#include <vector>

#include "errors.hpp"
#include "gradcheck.hpp"
#include "gradients.hpp"
#include "loss.hpp"
#include "parallel.hpp"
#include "problems.hpp"

using namespace qwell;

namespace {

struct ThreadLimitGuard {
  explicit ThreadLimitGuard(std::size_t n) { set_thread_limit(n); }
  ~ThreadLimitGuard() { set_thread_limit(0); }
};

bool same_gradient(const ParameterGradient& a, const ParameterGradient& b) {
  return a.weight_grads == b.weight_grads && a.bias_grads == b.bias_grads &&
         a.energy_grad == b.energy_grad;
}

}  // namespace

TEST_CASE("loss from loss_gradients equals total_loss exactly") {
  for (const auto& name : preset_names()) {
    const auto p = preset(name);
    const auto net = init_network(p.layer_sizes, 17);
    const auto grid = make_grid(p.domain, p.n_collocation);
    const auto lg = loss_gradients(net, p.energy_init, p, grid, 0.7);
    const auto plain = total_loss(net, p.energy_init, p, grid, 0.7);
    CHECK(lg.loss.l_pde == plain.l_pde);
    CHECK(lg.loss.l_norm == plain.l_norm);
    CHECK(lg.loss.total == plain.total);
  }
}

TEST_CASE("energy gradient is the mean of 2 r psi") {
  const auto p = preset("finite-well");
  const auto net = init_network(p.layer_sizes, 4);
  const auto grid = make_grid(p.domain, 37);
  const EnergyParam e{EnergyMode::Trainable, 1.3};
  const auto lg = loss_gradients(net, e, p, grid);
  const auto r = residuals(net, e, p, grid);
  const auto psi = trial_jets(p.envelope, net, grid.points);
  double expect = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) expect += 2.0 * r[i] * psi[i].value;
  expect /= static_cast<double>(r.size());
  REQUIRE(lg.grad.energy_grad.has_value());
  CHECK(std::abs(*lg.grad.energy_grad - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
}

TEST_CASE("fixed energy carries no energy gradient") {
  const auto p = preset("infinite-well");
  const auto net = init_network(p.layer_sizes, 4);
  const auto grid = make_grid(p.domain, p.n_collocation);
  const auto lg = loss_gradients(net, p.energy_init, p, grid);
  CHECK_FALSE(lg.grad.energy_grad.has_value());
  CHECK(lg.grad.all_finite());
}

TEST_CASE("zero network: unit loss and zero energy gradient") {
  const auto p = preset("finite-well");
  auto net = init_network(p.layer_sizes, 5);
  for (double& w : net.layers.back().weights) w = 0.0;
  for (double& b : net.layers.back().biases) b = 0.0;
  const auto grid = make_grid(p.domain, p.n_collocation);
  const auto lg = loss_gradients(net, p.energy_init, p, grid);
  CHECK(lg.loss.l_pde == 0.0);
  CHECK(lg.loss.l_norm == 1.0);
  CHECK(*lg.grad.energy_grad == 0.0);
}

TEST_CASE("gradient shapes match the network") {
  const auto p = preset("barrier");
  const auto net = init_network(p.layer_sizes, 2);
  const auto lg = loss_gradients(net, p.energy_init, p, make_grid(p.domain, 64));
  REQUIRE(lg.grad.weight_grads.size() == net.layers.size());
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    CHECK(lg.grad.weight_grads[l].size() == net.layers[l].weights.size());
    CHECK(lg.grad.bias_grads[l].size() == net.layers[l].biases.size());
  }
}

TEST_CASE("analytic gradients agree with central differences") {
  SUBCASE("[1,8,1], 20 points, trainable energy") {
    const auto report = gradcheck(42, std::vector<int>{1, 8, 1}, 20);
    CHECK(report.parameter_count == 8 + 8 + 8 + 1 + 1);  // weights, biases, energy
    CHECK(report.max_rel_error < 1e-5);
    bool has_energy = false;
    for (const auto& g : report.groups) has_energy = has_energy || g.name == "energy";
    CHECK(has_energy);
  }
  SUBCASE("two hidden layers, several seeds") {
    for (std::uint64_t seed : {0u, 1u, 7u}) {
      const auto report = gradcheck(seed, std::vector<int>{1, 6, 5, 1}, 25);
      CHECK(report.max_rel_error < 1e-5);
    }
  }
  SUBCASE("other problems and lambda values") {
    for (const auto& name : preset_names()) {
      auto p = preset(name);
      const auto net = init_network(std::vector<int>{1, 7, 1}, 3);
      for (double lambda : {0.0, 1.0, 2.5}) {
        const auto report = gradcheck(net, p.energy_init, p, 30, lambda);
        CHECK(report.max_rel_error < 1e-5);
      }
    }
  }
}

TEST_CASE("gradcheck rejects oversized networks") {
  CHECK_THROWS_AS(gradcheck(0, std::vector<int>{1, 30, 30, 1}, 20), ConfigError);
}

TEST_CASE("relative error floor") {
  CHECK(relative_error(1.0, 1.0) == 0.0);
  CHECK(relative_error(2.0, 1.0) == doctest::Approx(0.5));
  CHECK(relative_error(1e-9, 0.0) == doctest::Approx(1e-3));
}

TEST_CASE("gradients are independent of the thread count") {
  const auto p = preset("finite-well");
  const auto net = init_network(p.layer_sizes, 31);
  const auto grid = make_grid(p.domain, p.n_collocation);
  LossAndGradient serial;
  {
    ThreadLimitGuard g(1);
    serial = loss_gradients(net, p.energy_init, p, grid);
  }
  for (std::size_t threads : {2u, 3u, 8u}) {
    ThreadLimitGuard g(threads);
    const auto par = loss_gradients(net, p.energy_init, p, grid);
    CHECK(par.loss.total == serial.loss.total);
    CHECK(same_gradient(par.grad, serial.grad));
  }
}

TEST_CASE("grids too small for the loss are rejected") {
  const auto p = preset("finite-well");
  const auto net = init_network(p.layer_sizes, 1);
  CHECK_THROWS_AS(loss_gradients(net, p.energy_init, p, CollocationGrid{}), ConfigError);
}
