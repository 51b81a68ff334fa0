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

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace qwell {

/// Sampled wavefunction on a uniform grid.
struct WavefunctionSample {
  std::vector<double> x;
  std::vector<double> psi;
};

/// Flip the sign so the entry with the largest magnitude is positive.
inline void canonicalize_sign(std::span<double> psi) {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < psi.size(); ++i) {
    if (std::abs(psi[i]) > std::abs(psi[arg])) arg = i;
  }
  if (!psi.empty() && psi[arg] < 0.0) {
    for (double& v : psi) v = -v;
  }
}

/// Linear interpolation of (xs, ys) at x; xs ascending. Clamps outside.
inline double interpolate_linear(std::span<const double> xs,
                                 std::span<const double> ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  std::size_t lo = 0;
  std::size_t hi = xs.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (xs[mid] <= x ? lo : hi) = mid;
  }
  const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

}  // namespace qwell
