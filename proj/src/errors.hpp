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

#include <stdexcept>
#include <string>

namespace qwell {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user-supplied configuration (sizes, names, grids, files).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Broken internal contract: shape mismatches, solver non-convergence.
class InternalError : public Error {
 public:
  using Error::Error;
};

// Normalizing a wavefunction whose norm is numerically zero.
class ZeroWavefunctionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qwell
