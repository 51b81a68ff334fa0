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

#include <optional>
#include <span>
#include <string_view>

namespace qwell {

struct ComparisonReport {
  double pinn_energy = 0.0;
  double oracle_energy = 0.0;
  std::optional<double> published_energy;
  double abs_gap = 0.0;
  double rel_gap = 0.0;
  // Max |psi_pinn - psi_oracle| on the PINN sample points, both sides
  // sign-canonicalized, oracle linearly interpolated.
  double wavefunction_l_inf_gap = 0.0;
};

/// Ground-state energies reported in the literature for the built-in presets.
std::optional<double> published_energy(std::string_view preset_name);

ComparisonReport compare_results(double pinn_energy, double oracle_energy,
                                 std::optional<double> published,
                                 std::span<const double> pinn_x,
                                 std::span<const double> pinn_psi,
                                 std::span<const double> oracle_x,
                                 std::span<const double> oracle_psi);

}  // namespace qwell
