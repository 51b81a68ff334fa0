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
#include <string>

#include <json.hpp>

#include "problems.hpp"
#include "trainer.hpp"

namespace qwell {

/// Parsed run configuration: exactly one of a preset name or an inline
/// problem, training settings, and an optional output directory.
struct RunConfig {
  ProblemSpec problem;
  std::optional<std::string> preset_name;
  TrainingConfig training;
  std::optional<std::string> output_dir;
};

/// Inline problem object (fields mirror ProblemSpec). Throws ConfigError.
ProblemSpec problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const ProblemSpec& p);

/// Missing keys keep their defaults; unknown keys are rejected.
TrainingConfig training_from_json(const nlohmann::json& j,
                                  TrainingConfig base = {});
nlohmann::json training_to_json(const TrainingConfig& cfg);

/// Parses and validates a whole run config document.
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig run_config_from_text(const std::string& text);

}  // namespace qwell
