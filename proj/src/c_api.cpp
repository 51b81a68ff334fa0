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

#include "qwell/qwell.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "compare.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "gradcheck.hpp"
#include "loss.hpp"
#include "parallel.hpp"
#include "problems.hpp"
#include "reference.hpp"
#include "trainer.hpp"

struct qwell_problem {
  qwell::ProblemSpec spec;
};

struct qwell_model {
  std::optional<qwell::TrainedModel> model;
  std::vector<qwell::TrainingRecord> history;
  qwell::TrainingRecord last_good;
  bool diverged = false;
};

struct qwell_oracle {
  std::vector<double> eigenvalues;
  std::vector<double> x;
  std::vector<double> psi;
};

namespace {

thread_local std::string g_last_error;

qwell_status fail(qwell_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
qwell_status guarded(Fn&& fn) {
  try {
    fn();
    return QWELL_OK;
  } catch (const qwell::ConfigError& e) {
    return fail(QWELL_ERR_CONFIG, e.what());
  } catch (const qwell::TrainingDivergedError& e) {
    return fail(QWELL_ERR_DIVERGED, e.what());
  } catch (const qwell::ZeroWavefunctionError& e) {
    return fail(QWELL_ERR_ZERO_WAVEFUNCTION, e.what());
  } catch (const qwell::InternalError& e) {
    return fail(QWELL_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QWELL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QWELL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QWELL_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* message) {
  if (!ok) throw qwell::ConfigError(message);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qwell::TrainingConfig to_core(const qwell_training_config& c) {
  qwell::TrainingConfig cfg;
  cfg.epochs = c.epochs;
  cfg.learning_rate = c.learning_rate;
  cfg.lambda_norm = c.lambda_norm;
  cfg.seed = c.seed;
  cfg.log_interval = c.log_interval;
  cfg.adam_beta1 = c.adam_beta1;
  cfg.adam_beta2 = c.adam_beta2;
  cfg.adam_epsilon = c.adam_epsilon;
  switch (c.init) {
    case QWELL_INIT_FAN_IN_UNIFORM:
      cfg.init = qwell::InitScheme::FanInUniform;
      break;
    case QWELL_INIT_GLOROT_UNIFORM:
      cfg.init = qwell::InitScheme::GlorotUniform;
      break;
    default:
      throw qwell::ConfigError("unknown init scheme");
  }
  return cfg;
}

qwell_training_config from_core(const qwell::TrainingConfig& cfg) {
  qwell_training_config c;
  c.epochs = cfg.epochs;
  c.learning_rate = cfg.learning_rate;
  c.lambda_norm = cfg.lambda_norm;
  c.seed = cfg.seed;
  c.log_interval = cfg.log_interval;
  c.adam_beta1 = cfg.adam_beta1;
  c.adam_beta2 = cfg.adam_beta2;
  c.adam_epsilon = cfg.adam_epsilon;
  c.init = cfg.init == qwell::InitScheme::GlorotUniform ? QWELL_INIT_GLOROT_UNIFORM
                                                         : QWELL_INIT_FAN_IN_UNIFORM;
  return c;
}

qwell_record to_record(const qwell::TrainingRecord& r) {
  return {r.epoch, r.energy, r.l_pde, r.l_norm, r.total};
}

const qwell::TrainedModel& trained(const qwell_model* m) {
  require(m != nullptr, "model is NULL");
  if (!m->model) {
    throw qwell::ConfigError("model diverged during training and cannot be evaluated");
  }
  return *m->model;
}

// Single zero-potential well [-w, w] inside a barrier v0 > 0, domain
// symmetric about the well.
bool is_symmetric_finite_well(const qwell::ProblemSpec& p, double& v0, double& w) {
  const auto& segs = p.potential.segments;
  if (segs.size() != 1) return false;
  const auto& s = segs.front();
  if (s.v != 0.0 || s.x_lo != -s.x_hi || !(s.x_hi > 0.0)) return false;
  if (!(p.potential.default_value > 0.0)) return false;
  if (p.domain.a != -p.domain.b || !(p.domain.b >= s.x_hi)) return false;
  v0 = p.potential.default_value;
  w = s.x_hi;
  return true;
}

bool is_unit_infinite_well(const qwell::ProblemSpec& p) {
  if (p.domain.a != 0.0 || p.domain.b != 1.0) return false;
  if (p.potential.default_value != 0.0) return false;
  for (const auto& s : p.potential.segments) {
    if (s.v != 0.0) return false;
  }
  return true;
}

}  // namespace

extern "C" {

const char* qwell_last_error(void) { return g_last_error.c_str(); }

const char* qwell_version(void) { return "0.1.0"; }

void qwell_string_free(char* s) { std::free(s); }

void qwell_set_thread_limit(size_t threads) { qwell::set_thread_limit(threads); }

// ---- problems -------------------------------------------------------------

qwell_status qwell_problem_preset(const char* name, qwell_problem** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "NULL argument");
    *out = new qwell_problem{qwell::preset(name)};
  });
}

qwell_status qwell_problem_from_json(const char* json, qwell_problem** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "NULL argument");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      throw qwell::ConfigError(std::string("problem is not valid JSON: ") + e.what());
    }
    *out = new qwell_problem{qwell::problem_from_json(j)};
  });
}

qwell_status qwell_problem_to_json(const qwell_problem* p, char** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    *out = copy_string(qwell::problem_to_json(p->spec).dump());
  });
}

qwell_status qwell_problem_clone(const qwell_problem* p, qwell_problem** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    *out = new qwell_problem{p->spec};
  });
}

void qwell_problem_free(qwell_problem* p) { delete p; }

const char* qwell_problem_name(const qwell_problem* p) {
  return p != nullptr ? p->spec.name.c_str() : "";
}

qwell_status qwell_problem_get_info(const qwell_problem* p, qwell_problem_info* out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    const auto& s = p->spec;
    out->domain_a = s.domain.a;
    out->domain_b = s.domain.b;
    out->energy_mode = s.energy_init.trainable() ? QWELL_ENERGY_TRAINABLE : QWELL_ENERGY_FIXED;
    out->energy_init = s.energy_init.value;
    out->n_collocation = s.n_collocation;
    out->n_layers = s.layer_sizes.size();
    out->n_segments = s.potential.segments.size();
    out->potential_default = s.potential.default_value;
  });
}

qwell_status qwell_problem_layer_sizes(const qwell_problem* p, int* out, size_t capacity) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    require(capacity >= p->spec.layer_sizes.size(), "layer size buffer too small");
    for (std::size_t i = 0; i < p->spec.layer_sizes.size(); ++i) out[i] = p->spec.layer_sizes[i];
  });
}

double qwell_problem_potential(const qwell_problem* p, double x) {
  return p != nullptr ? qwell::potential_eval(p->spec.potential, x) : std::nan("");
}

qwell_status qwell_problem_set_collocation(qwell_problem* p, int n) {
  return guarded([&] {
    require(p != nullptr, "problem is NULL");
    qwell::ProblemSpec updated = p->spec;
    updated.n_collocation = n;
    updated.validate();
    p->spec = std::move(updated);
  });
}

qwell_status qwell_problem_trial_at_init(const qwell_problem* p, uint64_t seed, double x,
                                         double out_jet[3]) {
  return guarded([&] {
    require(p != nullptr && out_jet != nullptr, "NULL argument");
    const auto net = qwell::init_network(p->spec.layer_sizes, seed);
    const auto jet = qwell::trial_jet(p->spec.envelope, net, x);
    out_jet[0] = jet.value;
    out_jet[1] = jet.d1;
    out_jet[2] = jet.d2;
  });
}

// ---- training -------------------------------------------------------------

void qwell_training_config_init(qwell_training_config* cfg) {
  if (cfg != nullptr) *cfg = from_core(qwell::TrainingConfig{});
}

qwell_status qwell_training_config_validate(const qwell_training_config* cfg) {
  return guarded([&] {
    require(cfg != nullptr, "config is NULL");
    to_core(*cfg).validate();
  });
}

qwell_status qwell_training_config_to_json(const qwell_training_config* cfg, char** out) {
  return guarded([&] {
    require(cfg != nullptr && out != nullptr, "NULL argument");
    *out = copy_string(qwell::training_to_json(to_core(*cfg)).dump());
  });
}

qwell_status qwell_run_config_parse(const char* json, qwell_problem** problem,
                                    qwell_training_config* training, char** preset_name,
                                    char** output_dir) {
  return guarded([&] {
    require(json != nullptr && problem != nullptr && training != nullptr, "NULL argument");
    const qwell::RunConfig rc = qwell::run_config_from_text(json);
    char* name = nullptr;
    char* dir = nullptr;
    try {
      if (preset_name != nullptr && rc.preset_name) name = copy_string(*rc.preset_name);
      if (output_dir != nullptr && rc.output_dir) dir = copy_string(*rc.output_dir);
      *problem = new qwell_problem{rc.problem};
    } catch (...) {
      std::free(name);
      std::free(dir);
      throw;
    }
    *training = from_core(rc.training);
    if (preset_name != nullptr) *preset_name = name;
    if (output_dir != nullptr) *output_dir = dir;
  });
}

qwell_status qwell_train(const qwell_problem* problem, const qwell_training_config* cfg,
                         qwell_model** out) {
  if (out != nullptr) *out = nullptr;
  auto holder = std::make_unique<qwell_model>();
  const qwell_status status = guarded([&] {
    require(problem != nullptr && cfg != nullptr && out != nullptr, "NULL argument");
    try {
      holder->model = qwell::train(problem->spec, to_core(*cfg));
      holder->history = holder->model->history;
      holder->last_good = holder->history.back();
    } catch (const qwell::TrainingDivergedError& e) {
      holder->diverged = true;
      holder->history = e.history();
      holder->last_good = e.last_good();
      throw;
    }
  });
  if ((status == QWELL_OK || status == QWELL_ERR_DIVERGED) && out != nullptr) {
    *out = holder.release();
  }
  return status;
}

void qwell_model_free(qwell_model* m) { delete m; }

int qwell_model_diverged(const qwell_model* m) { return m != nullptr && m->diverged ? 1 : 0; }

size_t qwell_model_history_size(const qwell_model* m) {
  return m != nullptr ? m->history.size() : 0;
}

qwell_status qwell_model_history(const qwell_model* m, qwell_record* out, size_t capacity) {
  return guarded([&] {
    require(m != nullptr && (out != nullptr || m->history.empty()), "NULL argument");
    require(capacity >= m->history.size(), "history buffer too small");
    for (std::size_t i = 0; i < m->history.size(); ++i) out[i] = to_record(m->history[i]);
  });
}

qwell_status qwell_model_last_good(const qwell_model* m, qwell_record* out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "NULL argument");
    *out = to_record(m->last_good);
  });
}

qwell_status qwell_model_energy(const qwell_model* m, double* out) {
  return guarded([&] {
    require(out != nullptr, "NULL argument");
    *out = trained(m).energy.value;
  });
}

qwell_status qwell_model_diagnostics(const qwell_model* m, qwell_diagnostics* out) {
  return guarded([&] {
    require(out != nullptr, "NULL argument");
    const auto& d = trained(m).diagnostics;
    out->max_energy_step = d.max_energy_step;
    out->max_direction_changes = d.max_direction_changes;
  });
}

size_t qwell_model_parameter_count(const qwell_model* m) {
  return m != nullptr && m->model ? m->model->network.parameter_count() : 0;
}

qwell_status qwell_model_sample(const qwell_model* m, size_t n, double* x, double* psi) {
  return guarded([&] {
    require(x != nullptr && psi != nullptr, "NULL argument");
    require(n >= 2 && n <= 100000000, "sample count must be at least 2");
    const auto sample = qwell::sample_wavefunction(trained(m), static_cast<int>(n));
    std::memcpy(x, sample.x.data(), n * sizeof(double));
    std::memcpy(psi, sample.psi.data(), n * sizeof(double));
  });
}

qwell_status qwell_model_scaled_loss(const qwell_model* m, double scale, double lambda_norm,
                                     qwell_record* out) {
  return guarded([&] {
    require(out != nullptr, "NULL argument");
    require(std::isfinite(scale), "scale must be finite");
    require(lambda_norm >= 0.0 && std::isfinite(lambda_norm), "lambda_norm must be >= 0");
    const auto& model = trained(m);
    // The output layer is affine, so scaling its weights and bias scales N.
    qwell::MlpNetwork net = model.network;
    auto& last = net.layers.back();
    for (double& w : last.weights) w *= scale;
    for (double& b : last.biases) b *= scale;
    const auto grid = qwell::make_grid(model.problem.domain, model.problem.n_collocation);
    const auto loss = qwell::total_loss(net, model.energy, model.problem, grid, lambda_norm);
    *out = {model.config.epochs, model.energy.value, loss.l_pde, loss.l_norm, loss.total};
  });
}

// ---- reference solvers ----------------------------------------------------

void qwell_reference_options_init(qwell_reference_options* opts) {
  if (opts != nullptr) *opts = {1999, 3, 1};
}

qwell_status qwell_parse_method(const char* name, qwell_method* out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "NULL argument");
    const std::string s = name;
    if (s == "fd") {
      *out = QWELL_METHOD_FD;
    } else if (s == "transcendental") {
      *out = QWELL_METHOD_TRANSCENDENTAL;
    } else if (s == "analytic") {
      *out = QWELL_METHOD_ANALYTIC;
    } else {
      throw qwell::ConfigError("unknown method '" + s +
                               "' (expected fd, transcendental or analytic)");
    }
  });
}

const char* qwell_method_name(qwell_method method) {
  switch (method) {
    case QWELL_METHOD_FD:
      return "fd";
    case QWELL_METHOD_TRANSCENDENTAL:
      return "transcendental";
    case QWELL_METHOD_ANALYTIC:
      return "analytic";
  }
  return "unknown";
}

qwell_status qwell_reference(const qwell_problem* problem, qwell_method method,
                             const qwell_reference_options* opts, qwell_oracle** out) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "NULL argument");
    qwell_reference_options o;
    qwell_reference_options_init(&o);
    if (opts != nullptr) o = *opts;
    require(o.count >= 1, "count must be >= 1");
    const auto& spec = problem->spec;
    auto oracle = std::make_unique<qwell_oracle>();

    switch (method) {
      case QWELL_METHOD_FD: {
        const auto m = qwell::fd_hamiltonian(spec.potential, spec.domain, o.points);
        require(static_cast<std::size_t>(o.count) <= m.size(),
                "count exceeds the number of grid points");
        oracle->eigenvalues = qwell::lowest_eigenvalues(m, static_cast<std::size_t>(o.count));
        const auto ev = qwell::eigenvector_for(m, oracle->eigenvalues.front(), spec.domain);
        oracle->x = ev.grid.points;
        oracle->psi = ev.eigenvector;
        break;
      }
      case QWELL_METHOD_TRANSCENDENTAL: {
        double v0 = 0.0;
        double w = 0.0;
        if (!is_symmetric_finite_well(spec, v0, w)) {
          throw qwell::ConfigError(
              "transcendental method applies only to a symmetric finite well "
              "(one zero-potential segment [-w, w] inside a positive barrier)");
        }
        auto levels = qwell::finite_well_even_levels(v0, w);
        if (levels.empty()) throw qwell::InternalError("no even bound state found");
        if (levels.size() > static_cast<std::size_t>(o.count)) levels.resize(o.count);
        const auto grid = qwell::make_grid(spec.domain, o.points);
        oracle->eigenvalues = levels;
        oracle->x = grid.points;
        oracle->psi = qwell::finite_well_even_wavefunction(v0, w, levels.front(), grid);
        break;
      }
      case QWELL_METHOD_ANALYTIC: {
        if (!is_unit_infinite_well(spec)) {
          throw qwell::ConfigError(
              "analytic method applies only to the infinite well on [0, 1] with V = 0");
        }
        require(o.level >= 1, "level must be >= 1");
        const auto grid = qwell::make_grid(spec.domain, o.points);
        for (int k = 0; k < o.count; ++k) {
          oracle->eigenvalues.push_back(qwell::infinite_well_exact(o.level + k, grid).energy);
        }
        auto level = qwell::infinite_well_exact(o.level, grid);
        qwell::canonicalize_sign(level.psi);
        oracle->x = grid.points;
        oracle->psi = std::move(level.psi);
        break;
      }
      default:
        throw qwell::ConfigError("unknown method");
    }
    *out = oracle.release();
  });
}

void qwell_oracle_free(qwell_oracle* o) { delete o; }

size_t qwell_oracle_eigenvalue_count(const qwell_oracle* o) {
  return o != nullptr ? o->eigenvalues.size() : 0;
}

qwell_status qwell_oracle_eigenvalues(const qwell_oracle* o, double* out, size_t capacity) {
  return guarded([&] {
    require(o != nullptr && out != nullptr, "NULL argument");
    require(capacity >= o->eigenvalues.size(), "eigenvalue buffer too small");
    std::memcpy(out, o->eigenvalues.data(), o->eigenvalues.size() * sizeof(double));
  });
}

size_t qwell_oracle_sample_count(const qwell_oracle* o) { return o != nullptr ? o->x.size() : 0; }

qwell_status qwell_oracle_samples(const qwell_oracle* o, double* x, double* psi,
                                  size_t capacity) {
  return guarded([&] {
    require(o != nullptr && x != nullptr && psi != nullptr, "NULL argument");
    require(capacity >= o->x.size(), "sample buffer too small");
    std::memcpy(x, o->x.data(), o->x.size() * sizeof(double));
    std::memcpy(psi, o->psi.data(), o->psi.size() * sizeof(double));
  });
}

qwell_status qwell_fd_count_below(const qwell_problem* problem, int points, double sigma,
                                  size_t* out) {
  return guarded([&] {
    require(problem != nullptr && out != nullptr, "NULL argument");
    const auto m = qwell::fd_hamiltonian(problem->spec.potential, problem->spec.domain, points);
    *out = qwell::sturm_count(m, sigma);
  });
}

// ---- comparison -----------------------------------------------------------

qwell_status qwell_published_energy(const char* preset_name, double* out) {
  return guarded([&] {
    require(preset_name != nullptr && out != nullptr, "NULL argument");
    const auto e = qwell::published_energy(preset_name);
    if (!e) throw qwell::ConfigError(std::string("no published energy for '") + preset_name + "'");
    *out = *e;
  });
}

qwell_status qwell_compare(double pinn_energy, double oracle_energy, const char* preset_name,
                           const double* pinn_x, const double* pinn_psi, size_t n_pinn,
                           const double* oracle_x, const double* oracle_psi, size_t n_oracle,
                           qwell_comparison* out) {
  return guarded([&] {
    require(out != nullptr && pinn_x != nullptr && pinn_psi != nullptr &&
                oracle_x != nullptr && oracle_psi != nullptr,
            "NULL argument");
    const auto published =
        preset_name != nullptr ? qwell::published_energy(preset_name) : std::nullopt;
    const auto r = qwell::compare_results(
        pinn_energy, oracle_energy, published, {pinn_x, n_pinn}, {pinn_psi, n_pinn},
        {oracle_x, n_oracle}, {oracle_psi, n_oracle});
    out->pinn_energy = r.pinn_energy;
    out->oracle_energy = r.oracle_energy;
    out->has_published_energy = r.published_energy ? 1 : 0;
    out->published_energy = r.published_energy.value_or(0.0);
    out->abs_gap = r.abs_gap;
    out->rel_gap = r.rel_gap;
    out->wavefunction_l_inf_gap = r.wavefunction_l_inf_gap;
  });
}

// ---- gradient check -------------------------------------------------------

qwell_status qwell_gradcheck(uint64_t seed, const int* layer_sizes, size_t n_layers,
                             int n_points, qwell_gradcheck_group* groups, size_t capacity,
                             qwell_gradcheck_result* out) {
  return guarded([&] {
    require(layer_sizes != nullptr && out != nullptr, "NULL argument");
    require(groups != nullptr || capacity == 0, "NULL group buffer");
    const auto report = qwell::gradcheck(seed, {layer_sizes, n_layers}, n_points);
    out->parameter_count = report.parameter_count;
    out->max_rel_error = report.max_rel_error;
    out->n_groups = report.groups.size();
    for (std::size_t i = 0; i < report.groups.size() && i < capacity; ++i) {
      const auto& g = report.groups[i];
      std::memset(groups[i].name, 0, sizeof(groups[i].name));
      std::strncpy(groups[i].name, g.name.c_str(), sizeof(groups[i].name) - 1);
      groups[i].count = g.count;
      groups[i].max_rel_error = g.max_rel_error;
    }
  });
}

}  // extern "C"
