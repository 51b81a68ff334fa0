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

// qwell command-line driver. Talks to the solver only through the C API.

#include <qwell/qwell.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;

// Carries an exit code up to main.
struct CliError : std::runtime_error {
  CliError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

int exit_code_for(qwell_status s) {
  switch (s) {
    case QWELL_OK:
      return kExitOk;
    case QWELL_ERR_CONFIG:
      return kExitConfig;
    case QWELL_ERR_DIVERGED:
      return kExitDiverged;
    default:
      return kExitFailure;
  }
}

void check(qwell_status s) {
  if (s != QWELL_OK) throw CliError(exit_code_for(s), qwell_last_error());
}

struct ProblemDeleter {
  void operator()(qwell_problem* p) const { qwell_problem_free(p); }
};
struct ModelDeleter {
  void operator()(qwell_model* m) const { qwell_model_free(m); }
};
struct OracleDeleter {
  void operator()(qwell_oracle* o) const { qwell_oracle_free(o); }
};
using ProblemPtr = std::unique_ptr<qwell_problem, ProblemDeleter>;
using ModelPtr = std::unique_ptr<qwell_model, ModelDeleter>;
using OraclePtr = std::unique_ptr<qwell_oracle, OracleDeleter>;

std::string take_string(char* s) {
  std::string out = s != nullptr ? s : "";
  qwell_string_free(s);
  return out;
}

// %.17g round-trips every double and is locale independent for our output.
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kExitConfig, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError(kExitConfig, "cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw CliError(kExitConfig, "failed writing " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw CliError(kExitConfig, "cannot create output directory " + dir.string());
  }
}

json parse_json_file(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw CliError(kExitConfig, path.string() + ": " + e.what());
  }
}

// Two-column CSV with a header row.
void read_xy_csv(const fs::path& path, std::vector<double>& xs, std::vector<double>& ys) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw CliError(kExitConfig, path.string() + " is empty");
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw CliError(kExitConfig, path.string() + ": malformed row " + std::to_string(row));
    }
    try {
      std::size_t used = 0;
      xs.push_back(std::stod(line.substr(0, comma), &used));
      ys.push_back(std::stod(line.substr(comma + 1), &used));
    } catch (const std::exception&) {
      throw CliError(kExitConfig, path.string() + ": bad number on row " + std::to_string(row));
    }
  }
}

std::string xy_csv(const char* header, const std::vector<double>& xs,
                   const std::vector<double>& ys) {
  std::string out = header;
  out += '\n';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out += fmt(xs[i]);
    out += ',';
    out += fmt(ys[i]);
    out += '\n';
  }
  return out;
}

// ---- problem selection shared by run and reference ------------------------

struct ProblemOptions {
  std::string preset;
  std::string config_path;
};

struct LoadedRun {
  ProblemPtr problem;
  qwell_training_config training{};
  std::optional<std::string> preset_name;
  std::optional<std::string> output_dir;
};

LoadedRun load_problem(const ProblemOptions& opts) {
  if (opts.preset.empty() == opts.config_path.empty()) {
    throw CliError(kExitConfig, "give exactly one of --preset or --config");
  }
  LoadedRun run;
  qwell_training_config_init(&run.training);
  qwell_problem* raw = nullptr;
  if (!opts.preset.empty()) {
    check(qwell_problem_preset(opts.preset.c_str(), &raw));
    run.problem.reset(raw);
    run.preset_name = opts.preset;
    return run;
  }
  const std::string text = read_file(opts.config_path);
  char* preset = nullptr;
  char* out_dir = nullptr;
  check(qwell_run_config_parse(text.c_str(), &raw, &run.training, &preset, &out_dir));
  run.problem.reset(raw);
  if (preset != nullptr) run.preset_name = take_string(preset);
  if (out_dir != nullptr) run.output_dir = take_string(out_dir);
  return run;
}

json problem_json(const qwell_problem* p) {
  char* s = nullptr;
  check(qwell_problem_to_json(p, &s));
  return json::parse(take_string(s));
}

json training_json(const qwell_training_config& cfg) {
  char* s = nullptr;
  check(qwell_training_config_to_json(&cfg, &s));
  return json::parse(take_string(s));
}

json record_json(const qwell_record& r) {
  return {{"epoch", r.epoch},
          {"energy", r.energy},
          {"l_pde", r.l_pde},
          {"l_norm", r.l_norm},
          {"total", r.total}};
}

fs::path output_dir(const std::string& flag, const std::optional<std::string>& from_config) {
  if (!flag.empty()) return flag;
  if (from_config) return *from_config;
  return ".";
}

// ---- run ------------------------------------------------------------------

struct RunOptions {
  ProblemOptions problem;
  std::string out;
  std::optional<long long> seed;
  std::optional<int> epochs;
  std::optional<double> lr;
  std::optional<double> lambda_norm;
  std::optional<int> log_interval;
  std::optional<int> points;
  int samples = 1001;
};

std::string history_csv(const std::vector<qwell_record>& history) {
  std::string out = "epoch,energy,l_pde,l_norm,total\n";
  for (const auto& r : history) {
    out += std::to_string(r.epoch);
    for (double v : {r.energy, r.l_pde, r.l_norm, r.total}) {
      out += ',';
      out += fmt(v);
    }
    out += '\n';
  }
  return out;
}

int cmd_run(const RunOptions& o) {
  LoadedRun run = load_problem(o.problem);
  qwell_training_config& cfg = run.training;
  if (o.seed) {
    if (*o.seed < 0) throw CliError(kExitConfig, "--seed must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(*o.seed);
  }
  if (o.epochs) cfg.epochs = *o.epochs;
  if (o.lr) cfg.learning_rate = *o.lr;
  if (o.lambda_norm) cfg.lambda_norm = *o.lambda_norm;
  if (o.log_interval) cfg.log_interval = *o.log_interval;
  if (o.points) check(qwell_problem_set_collocation(run.problem.get(), *o.points));
  if (o.samples < 2) throw CliError(kExitConfig, "--samples must be at least 2");
  check(qwell_training_config_validate(&cfg));

  const fs::path dir = output_dir(o.out, run.output_dir);
  ensure_dir(dir);

  json summary;
  summary["problem"] = qwell_problem_name(run.problem.get());
  summary["preset"] = run.preset_name ? json(*run.preset_name) : json(nullptr);
  summary["problem_definition"] = problem_json(run.problem.get());
  summary["training"] = training_json(cfg);
  summary["seed"] = cfg.seed;

  const auto start = std::chrono::steady_clock::now();
  qwell_model* raw = nullptr;
  const qwell_status status = qwell_train(run.problem.get(), &cfg, &raw);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ModelPtr model(raw);
  if (status != QWELL_OK && status != QWELL_ERR_DIVERGED) check(status);
  const std::string train_error = status == QWELL_OK ? "" : qwell_last_error();

  std::vector<qwell_record> history(qwell_model_history_size(model.get()));
  check(qwell_model_history(model.get(), history.data(), history.size()));
  write_file(dir / "history.csv", history_csv(history));
  summary["wall_clock_seconds"] = seconds;

  if (status == QWELL_ERR_DIVERGED) {
    qwell_record last{};
    check(qwell_model_last_good(model.get(), &last));
    summary["status"] = "diverged";
    summary["error"] = train_error;
    summary["last_good"] = record_json(last);
    write_file(dir / "summary.json", summary.dump(2) + "\n");
    std::cerr << "qwell: " << train_error << "; partial history written to "
              << (dir / "history.csv").string() << "\n";
    return kExitDiverged;
  }

  const qwell_record& final_rec = history.back();
  qwell_diagnostics diag{};
  check(qwell_model_diagnostics(model.get(), &diag));

  std::vector<double> xs(static_cast<std::size_t>(o.samples));
  std::vector<double> psi(xs.size());
  check(qwell_model_sample(model.get(), xs.size(), xs.data(), psi.data()));
  write_file(dir / "wavefunction.csv", xy_csv("x,psi", xs, psi));

  summary["status"] = "ok";
  summary["final"] = record_json(final_rec);
  summary["energy"] = final_rec.energy;
  summary["parameter_count"] = qwell_model_parameter_count(model.get());
  summary["wavefunction_samples"] = o.samples;
  summary["diagnostics"] = {{"max_energy_step", diag.max_energy_step},
                            {"max_direction_changes_per_500_epochs",
                             diag.max_direction_changes}};
  write_file(dir / "summary.json", summary.dump(2) + "\n");

  std::cout << summary["problem"].get<std::string>() << ": E = " << fmt(final_rec.energy)
            << ", total loss = " << fmt(final_rec.total) << " after " << cfg.epochs
            << " epochs (" << seconds << " s)\n";
  return kExitOk;
}

// ---- reference ------------------------------------------------------------

struct ReferenceOptions {
  ProblemOptions problem;
  std::string out;
  std::string method = "fd";
  std::optional<int> points;
  int count = 3;
  int level = 1;
};

int cmd_reference(const ReferenceOptions& o) {
  LoadedRun run = load_problem(o.problem);
  qwell_method method{};
  check(qwell_parse_method(o.method.c_str(), &method));
  qwell_reference_options opts;
  qwell_reference_options_init(&opts);
  if (o.points) opts.points = *o.points;
  opts.count = o.count;
  opts.level = o.level;

  qwell_oracle* raw = nullptr;
  check(qwell_reference(run.problem.get(), method, &opts, &raw));
  OraclePtr oracle(raw);

  std::vector<double> eig(qwell_oracle_eigenvalue_count(oracle.get()));
  check(qwell_oracle_eigenvalues(oracle.get(), eig.data(), eig.size()));
  std::vector<double> xs(qwell_oracle_sample_count(oracle.get()));
  std::vector<double> psi(xs.size());
  check(qwell_oracle_samples(oracle.get(), xs.data(), psi.data(), xs.size()));

  const fs::path dir = output_dir(o.out, run.output_dir);
  ensure_dir(dir);
  json doc = {{"problem", qwell_problem_name(run.problem.get())},
              {"problem_definition", problem_json(run.problem.get())},
              {"method", qwell_method_name(method)},
              {"points", opts.points},
              {"eigenvalues", eig}};
  if (method == QWELL_METHOD_ANALYTIC) doc["level"] = opts.level;
  write_file(dir / "oracle.json", doc.dump(2) + "\n");
  write_file(dir / "oracle_wavefunction.csv", xy_csv("x,psi", xs, psi));

  std::cout << doc["problem"].get<std::string>() << " (" << qwell_method_name(method)
            << "): E0 = " << fmt(eig.front()) << "\n";
  return kExitOk;
}

// ---- compare --------------------------------------------------------------

struct CompareOptions {
  std::string run_dir;
  std::string oracle_dir;
  std::string out;
};

// Same physical problem: name, domain and potential must agree. Network and
// collocation settings may differ.
bool same_problem(const json& a, const json& b) {
  return a.at("name") == b.at("name") && a.at("domain") == b.at("domain") &&
         a.at("potential") == b.at("potential");
}

int cmd_compare(const CompareOptions& o) {
  const fs::path run_dir = o.run_dir;
  const fs::path oracle_dir = o.oracle_dir;
  const json summary = parse_json_file(run_dir / "summary.json");
  const json oracle = parse_json_file(oracle_dir / "oracle.json");

  double pinn_energy = 0.0;
  double oracle_energy = 0.0;
  std::string name;
  try {
    if (summary.at("status") != "ok") {
      throw CliError(kExitConfig, "run in " + run_dir.string() + " did not complete");
    }
    if (!same_problem(summary.at("problem_definition"), oracle.at("problem_definition"))) {
      throw CliError(kExitConfig, "run and oracle refer to different problems ('" +
                                      summary.at("problem").get<std::string>() + "' vs '" +
                                      oracle.at("problem").get<std::string>() + "')");
    }
    name = summary.at("problem").get<std::string>();
    pinn_energy = summary.at("energy").get<double>();
    const auto& eig = oracle.at("eigenvalues");
    if (!eig.is_array() || eig.empty()) throw CliError(kExitConfig, "oracle has no eigenvalues");
    oracle_energy = eig.front().get<double>();
  } catch (const json::exception& e) {
    throw CliError(kExitConfig, std::string("malformed run or oracle output: ") + e.what());
  }

  std::vector<double> px, ppsi, ox, opsi;
  read_xy_csv(run_dir / "wavefunction.csv", px, ppsi);
  read_xy_csv(oracle_dir / "oracle_wavefunction.csv", ox, opsi);

  const std::string preset =
      summary.contains("preset") && summary.at("preset").is_string()
          ? summary.at("preset").get<std::string>()
          : std::string();
  qwell_comparison c{};
  check(qwell_compare(pinn_energy, oracle_energy, preset.empty() ? nullptr : preset.c_str(),
                      px.data(), ppsi.data(), px.size(), ox.data(), opsi.data(), ox.size(),
                      &c));

  json doc = {{"problem", name},
              {"oracle_method", oracle.value("method", "")},
              {"pinn_energy", c.pinn_energy},
              {"oracle_energy", c.oracle_energy},
              {"abs_gap", c.abs_gap},
              {"rel_gap", c.rel_gap},
              {"wavefunction_l_inf_gap", c.wavefunction_l_inf_gap}};
  if (c.has_published_energy) {
    doc["published_energy"] = c.published_energy;
    doc["published_abs_gap"] = std::abs(c.pinn_energy - c.published_energy);
    doc["published_oracle_gap"] = std::abs(c.oracle_energy - c.published_energy);
  } else {
    doc["published_energy"] = nullptr;
  }

  const fs::path dir = o.out.empty() ? run_dir : fs::path(o.out);
  ensure_dir(dir);
  write_file(dir / "comparison.json", doc.dump(2) + "\n");

  std::printf("%s: pinn E=%.6f vs %s E=%.6f, rel gap %.3f%%, psi L-inf gap %.3e\n",
              name.c_str(), c.pinn_energy, doc["oracle_method"].get<std::string>().c_str(),
              c.oracle_energy, 100.0 * c.rel_gap, c.wavefunction_l_inf_gap);
  return kExitOk;
}

// ---- gradcheck ------------------------------------------------------------

struct GradcheckOptions {
  long long seed = 42;
  std::vector<int> layers{1, 8, 1};
  int points = 20;
};

int cmd_gradcheck(const GradcheckOptions& o) {
  if (o.seed < 0) throw CliError(kExitConfig, "--seed must be non-negative");
  std::vector<qwell_gradcheck_group> groups(16);
  qwell_gradcheck_result r{};
  check(qwell_gradcheck(static_cast<std::uint64_t>(o.seed), o.layers.data(), o.layers.size(),
                        o.points, groups.data(), groups.size(), &r));
  if (r.n_groups > groups.size()) {
    groups.resize(r.n_groups);
    check(qwell_gradcheck(static_cast<std::uint64_t>(o.seed), o.layers.data(),
                          o.layers.size(), o.points, groups.data(), groups.size(), &r));
  }
  for (std::size_t i = 0; i < r.n_groups; ++i) {
    std::printf("%-16s %5zu params  max rel error %.3e\n", groups[i].name, groups[i].count,
                groups[i].max_rel_error);
  }
  const bool ok = r.max_rel_error < 1e-5;
  std::printf("%s: max rel error %.3e over %zu parameters (threshold 1e-5)\n",
              ok ? "PASS" : "FAIL", r.max_rel_error, r.parameter_count);
  return ok ? kExitOk : kExitFailure;
}

void add_problem_flags(CLI::App* cmd, ProblemOptions& p) {
  cmd->add_option("--preset", p.preset, "infinite-well, finite-well or barrier");
  cmd->add_option("--config", p.config_path, "JSON run config");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Physics-informed neural network solver for 1D Schroedinger bound states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qwell_version());

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "train a PINN and write history, wavefunction, summary");
  add_problem_flags(run_cmd, run.problem);
  run_cmd->add_option("--out", run.out, "output directory");
  run_cmd->add_option("--seed", run.seed, "initialization seed");
  run_cmd->add_option("--epochs", run.epochs, "optimizer steps");
  run_cmd->add_option("--lr", run.lr, "Adam learning rate");
  run_cmd->add_option("--lambda-norm", run.lambda_norm, "normalization penalty weight");
  run_cmd->add_option("--log-interval", run.log_interval, "epochs between history rows");
  run_cmd->add_option("--points", run.points, "collocation points");
  run_cmd->add_option("--samples", run.samples, "wavefunction.csv rows")->capture_default_str();

  ReferenceOptions ref;
  auto* ref_cmd = app.add_subcommand("reference", "solve with a classical reference method");
  add_problem_flags(ref_cmd, ref.problem);
  ref_cmd->add_option("--out", ref.out, "output directory");
  ref_cmd->add_option("--method", ref.method, "fd, transcendental or analytic")
      ->capture_default_str();
  ref_cmd->add_option("--points", ref.points,
                      "fd interior points, or wavefunction samples (default 1999)");
  ref_cmd->add_option("--count", ref.count, "eigenvalues to report")->capture_default_str();
  ref_cmd->add_option("--level", ref.level, "analytic quantum number")->capture_default_str();

  CompareOptions cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "compare a run against an oracle");
  cmp_cmd->add_option("--run", cmp.run_dir, "directory of a finished run")->required();
  cmp_cmd->add_option("--oracle", cmp.oracle_dir, "directory of a reference output")
      ->required();
  cmp_cmd->add_option("--out", cmp.out, "output directory (default: the run directory)");

  GradcheckOptions gc;
  auto* gc_cmd = app.add_subcommand("gradcheck", "check analytic gradients against finite differences");
  gc_cmd->add_option("--seed", gc.seed, "initialization seed")->capture_default_str();
  gc_cmd->add_option("--layers", gc.layers, "layer sizes, e.g. 1,8,1")
      ->delimiter(',')
      ->capture_default_str();
  gc_cmd->add_option("--points", gc.points, "collocation points")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*ref_cmd) return cmd_reference(ref);
    if (*cmp_cmd) return cmd_compare(cmp);
    if (*gc_cmd) return cmd_gradcheck(gc);
  } catch (const CliError& e) {
    std::cerr << "qwell: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "qwell: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitConfig;
}
