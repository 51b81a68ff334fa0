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

#include "config.hpp"

#include <initializer_list>
#include <string_view>

#include "errors.hpp"

namespace qwell {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, std::string_view where,
                         std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) {
    throw ConfigError(std::string(where) + " must be a JSON object");
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (auto key : allowed) known = known || item.key() == key;
    if (!known) {
      throw ConfigError("unknown key '" + item.key() + "' in " + std::string(where));
    }
  }
}

const json& require(const json& j, const char* key, std::string_view where) {
  if (!j.contains(key)) {
    throw ConfigError("missing '" + std::string(key) + "' in " + std::string(where));
  }
  return j.at(key);
}

double as_number(const json& j, std::string_view what) {
  if (!j.is_number()) throw ConfigError(std::string(what) + " must be a number");
  return j.get<double>();
}

long long as_integer(const json& j, std::string_view what) {
  if (!j.is_number_integer()) {
    throw ConfigError(std::string(what) + " must be an integer");
  }
  return j.get<long long>();
}

int as_int(const json& j, std::string_view what) {
  const long long v = as_integer(j, what);
  if (v < -2147483647LL || v > 2147483647LL) {
    throw ConfigError(std::string(what) + " is out of range");
  }
  return static_cast<int>(v);
}

Domain as_interval(const json& j, std::string_view what) {
  if (!j.is_array() || j.size() != 2) {
    throw ConfigError(std::string(what) + " must be a two-element array [a, b]");
  }
  return {as_number(j[0], what), as_number(j[1], what)};
}

}  // namespace

ProblemSpec problem_from_json(const json& j) {
  reject_unknown_keys(j, "problem",
                      {"name", "domain", "envelope", "potential", "energy",
                       "layer_sizes", "n_collocation"});
  ProblemSpec p;
  const json& name = require(j, "name", "problem");
  if (!name.is_string()) throw ConfigError("problem.name must be a string");
  p.name = name.get<std::string>();
  p.domain = as_interval(require(j, "domain", "problem"), "problem.domain");
  if (j.contains("envelope")) {
    const Domain env = as_interval(j.at("envelope"), "problem.envelope");
    p.envelope = {env.a, env.b};
  } else {
    p.envelope = {p.domain.a, p.domain.b};
  }

  const json& pot = require(j, "potential", "problem");
  reject_unknown_keys(pot, "problem.potential", {"segments", "default_value"});
  p.potential.default_value =
      pot.contains("default_value")
          ? as_number(pot.at("default_value"), "potential.default_value")
          : 0.0;
  if (pot.contains("segments")) {
    const json& segs = pot.at("segments");
    if (!segs.is_array()) throw ConfigError("potential.segments must be an array");
    for (const json& s : segs) {
      reject_unknown_keys(s, "potential segment", {"x_lo", "x_hi", "v"});
      p.potential.segments.push_back(
          {as_number(require(s, "x_lo", "potential segment"), "x_lo"),
           as_number(require(s, "x_hi", "potential segment"), "x_hi"),
           as_number(require(s, "v", "potential segment"), "v")});
    }
  }

  const json& energy = require(j, "energy", "problem");
  reject_unknown_keys(energy, "problem.energy", {"mode", "value"});
  const json& mode = require(energy, "mode", "problem.energy");
  if (!mode.is_string()) throw ConfigError("energy.mode must be a string");
  const std::string mode_name = mode.get<std::string>();
  if (mode_name == "fixed") {
    p.energy_init.mode = EnergyMode::Fixed;
  } else if (mode_name == "trainable") {
    p.energy_init.mode = EnergyMode::Trainable;
  } else {
    throw ConfigError("energy.mode must be 'fixed' or 'trainable'");
  }
  // A fixed energy must be an explicitly supplied eigenvalue.
  p.energy_init.value = as_number(require(energy, "value", "problem.energy"),
                                  "energy.value");

  const json& sizes = require(j, "layer_sizes", "problem");
  if (!sizes.is_array()) throw ConfigError("layer_sizes must be an array");
  for (const json& s : sizes) p.layer_sizes.push_back(as_int(s, "layer size"));
  p.n_collocation = as_int(require(j, "n_collocation", "problem"), "n_collocation");

  p.validate();
  return p;
}

json problem_to_json(const ProblemSpec& p) {
  json segments = json::array();
  for (const auto& s : p.potential.segments) {
    segments.push_back({{"x_lo", s.x_lo}, {"x_hi", s.x_hi}, {"v", s.v}});
  }
  return {
      {"name", p.name},
      {"domain", {p.domain.a, p.domain.b}},
      {"envelope", {p.envelope.a, p.envelope.b}},
      {"potential", {{"segments", segments}, {"default_value", p.potential.default_value}}},
      {"energy",
       {{"mode", p.energy_init.trainable() ? "trainable" : "fixed"},
        {"value", p.energy_init.value}}},
      {"layer_sizes", p.layer_sizes},
      {"n_collocation", p.n_collocation},
  };
}

TrainingConfig training_from_json(const json& j, TrainingConfig base) {
  reject_unknown_keys(j, "training",
                      {"epochs", "learning_rate", "lambda_norm", "seed",
                       "log_interval", "adam_beta1", "adam_beta2", "adam_epsilon",
                       "init"});
  TrainingConfig cfg = base;
  if (j.contains("epochs")) cfg.epochs = as_int(j.at("epochs"), "epochs");
  if (j.contains("learning_rate")) {
    cfg.learning_rate = as_number(j.at("learning_rate"), "learning_rate");
  }
  if (j.contains("lambda_norm")) {
    cfg.lambda_norm = as_number(j.at("lambda_norm"), "lambda_norm");
  }
  if (j.contains("seed")) {
    const long long seed = as_integer(j.at("seed"), "seed");
    if (seed < 0) throw ConfigError("seed must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(seed);
  }
  if (j.contains("log_interval")) {
    cfg.log_interval = as_int(j.at("log_interval"), "log_interval");
  }
  if (j.contains("adam_beta1")) cfg.adam_beta1 = as_number(j.at("adam_beta1"), "adam_beta1");
  if (j.contains("adam_beta2")) cfg.adam_beta2 = as_number(j.at("adam_beta2"), "adam_beta2");
  if (j.contains("adam_epsilon")) {
    cfg.adam_epsilon = as_number(j.at("adam_epsilon"), "adam_epsilon");
  }
  if (j.contains("init")) {
    if (!j.at("init").is_string()) throw ConfigError("init must be a string");
    cfg.init = parse_init_scheme(j.at("init").get<std::string>());
  }
  cfg.validate();
  return cfg;
}

json training_to_json(const TrainingConfig& cfg) {
  return {
      {"epochs", cfg.epochs},
      {"learning_rate", cfg.learning_rate},
      {"lambda_norm", cfg.lambda_norm},
      {"seed", cfg.seed},
      {"log_interval", cfg.log_interval},
      {"adam_beta1", cfg.adam_beta1},
      {"adam_beta2", cfg.adam_beta2},
      {"adam_epsilon", cfg.adam_epsilon},
      {"init", init_scheme_name(cfg.init)},
  };
}

RunConfig run_config_from_json(const json& j) {
  reject_unknown_keys(j, "run config", {"preset", "problem", "training", "output_dir"});
  const bool has_preset = j.contains("preset");
  const bool has_problem = j.contains("problem");
  if (has_preset == has_problem) {
    throw ConfigError("run config needs exactly one of 'preset' or 'problem'");
  }
  RunConfig rc;
  if (has_preset) {
    if (!j.at("preset").is_string()) throw ConfigError("preset must be a string");
    rc.preset_name = j.at("preset").get<std::string>();
    rc.problem = preset(*rc.preset_name);
  } else {
    rc.problem = problem_from_json(j.at("problem"));
  }
  if (j.contains("training")) rc.training = training_from_json(j.at("training"));
  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string()) throw ConfigError("output_dir must be a string");
    rc.output_dir = j.at("output_dir").get<std::string>();
  }
  return rc;
}

RunConfig run_config_from_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return run_config_from_json(j);
}

}  // namespace qwell
