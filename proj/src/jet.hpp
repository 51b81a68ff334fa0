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

namespace qwell {

/// Value together with its first and second derivative with respect to the
/// scalar input x. Arithmetic follows the chain and product rules exactly.
struct SecondOrderJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  /// The jet of the identity map evaluated at x.
  static constexpr SecondOrderJet seed(double x) { return {x, 1.0, 0.0}; }
  static constexpr SecondOrderJet constant(double c) { return {c, 0.0, 0.0}; }
};

constexpr SecondOrderJet operator+(const SecondOrderJet& u,
                                   const SecondOrderJet& v) {
  return {u.value + v.value, u.d1 + v.d1, u.d2 + v.d2};
}

constexpr SecondOrderJet operator-(const SecondOrderJet& u,
                                   const SecondOrderJet& v) {
  return {u.value - v.value, u.d1 - v.d1, u.d2 - v.d2};
}

constexpr SecondOrderJet operator-(const SecondOrderJet& u) {
  return {-u.value, -u.d1, -u.d2};
}

constexpr SecondOrderJet operator*(double c, const SecondOrderJet& u) {
  return {c * u.value, c * u.d1, c * u.d2};
}

constexpr SecondOrderJet operator*(const SecondOrderJet& u, double c) {
  return c * u;
}

constexpr SecondOrderJet operator*(const SecondOrderJet& u,
                                   const SecondOrderJet& v) {
  return {u.value * v.value,
          u.d1 * v.value + u.value * v.d1,
          u.d2 * v.value + 2.0 * u.d1 * v.d1 + u.value * v.d2};
}

inline SecondOrderJet tanh(const SecondOrderJet& a) {
  const double t = std::tanh(a.value);
  const double s = 1.0 - t * t;
  return {t, s * a.d1, s * a.d2 - 2.0 * t * s * a.d1 * a.d1};
}

}  // namespace qwell
