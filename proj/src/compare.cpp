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

#include "compare.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "wavefunction.hpp"

namespace qwell {

std::optional<double> published_energy(std::string_view preset_name) {
  if (preset_name == "infinite-well") return std::numbers::pi * std::numbers::pi;
  if (preset_name == "finite-well") return 1.72;
  if (preset_name == "barrier") return 4.87;
  return std::nullopt;
}

ComparisonReport compare_results(double pinn_energy, double oracle_energy,
                                 std::optional<double> published,
                                 std::span<const double> pinn_x,
                                 std::span<const double> pinn_psi,
                                 std::span<const double> oracle_x,
                                 std::span<const double> oracle_psi) {
  if (pinn_x.size() != pinn_psi.size() || oracle_x.size() != oracle_psi.size()) {
    throw ConfigError("wavefunction columns have different lengths");
  }
  if (pinn_x.size() < 2 || oracle_x.size() < 2) {
    throw ConfigError("wavefunction tables need at least 2 rows");
  }
  if (!std::is_sorted(oracle_x.begin(), oracle_x.end())) {
    throw ConfigError("oracle wavefunction x column must be ascending");
  }

  ComparisonReport r;
  r.pinn_energy = pinn_energy;
  r.oracle_energy = oracle_energy;
  r.published_energy = published;
  r.abs_gap = std::abs(pinn_energy - oracle_energy);
  r.rel_gap = r.abs_gap / std::max(std::abs(oracle_energy), 1e-12);

  std::vector<double> a(pinn_psi.begin(), pinn_psi.end());
  std::vector<double> b(oracle_psi.begin(), oracle_psi.end());
  canonicalize_sign(a);
  canonicalize_sign(b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ref = interpolate_linear(oracle_x, b, pinn_x[i]);
    r.wavefunction_l_inf_gap = std::max(r.wavefunction_l_inf_gap, std::abs(a[i] - ref));
  }
  return r;
}

}  // namespace qwell
