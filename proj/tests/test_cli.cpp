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

// Runs the qwell executable as a subprocess and inspects its outputs.

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct ScratchCleanup {
  fs::path root;
  ~ScratchCleanup() {
    std::error_code ec;
    if (!root.empty()) fs::remove_all(root, ec);
  }
} g_cleanup;

fs::path scratch_root() {
  static const fs::path root = [] {
    fs::path p = fs::temp_directory_path() / ("qwell_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    g_cleanup.root = p;
    return p;
  }();
  return root;
}

fs::path scratch(const std::string& name) { return scratch_root() / name; }

int qwell(const std::string& args) {
  const std::string cmd = std::string("\"") + QWELL_CLI_PATH + "\" " + args + " > \"" +
                          (scratch_root() / "last_stdout.txt").string() + "\" 2>&1";
  const int raw = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(raw));
  return WEXITSTATUS(raw);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

void check_rectangular(const std::vector<std::vector<std::string>>& rows) {
  REQUIRE_FALSE(rows.empty());
  for (const auto& r : rows) CHECK(r.size() == rows.front().size());
}

}  // namespace

TEST_CASE("run writes history, wavefunction and summary") {
  const auto out = scratch("iw");
  REQUIRE(qwell("run --preset infinite-well --epochs 200 --log-interval 50 --out " +
                out.string()) == 0);
  const auto history = read_csv(out / "history.csv");
  check_rectangular(history);
  CHECK(history.front() ==
        std::vector<std::string>{"epoch", "energy", "l_pde", "l_norm", "total"});
  CHECK(history.size() == 1 + 5);
  CHECK(history.back()[0] == "200");

  const auto wave = read_csv(out / "wavefunction.csv");
  check_rectangular(wave);
  CHECK(wave.front() == std::vector<std::string>{"x", "psi"});
  CHECK(wave.size() == 1 + 1001);

  const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
  CHECK(summary["seed"] == 42);
  CHECK(summary["training"]["epochs"] == 200);
  CHECK(summary["training"]["learning_rate"] == 1e-3);
  CHECK(summary["problem_definition"]["name"] == "infinite-well");
  CHECK(summary["energy"].get<double>() == doctest::Approx(9.8696044010893586));
  CHECK(summary.contains("wall_clock_seconds"));
  CHECK(summary["status"] == "ok");
}

TEST_CASE("command-line overrides reach the trainer") {
  const auto out = scratch("fw_flags");
  REQUIRE(qwell("run --preset finite-well --epochs 30 --log-interval 10 --seed 5 --lr 0.002 "
                "--lambda-norm 0.5 --points 64 --out " +
                out.string()) == 0);
  const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
  CHECK(summary["seed"] == 5);
  CHECK(summary["training"]["learning_rate"] == 0.002);
  CHECK(summary["training"]["lambda_norm"] == 0.5);
  CHECK(summary["problem_definition"]["n_collocation"] == 64);
  const auto history = read_csv(out / "history.csv");
  CHECK(std::stod(history[1][1]) == 1.0);  // epoch 0 energy is the initial guess
  CHECK(std::stod(history[1][4]) > std::stod(history.back()[4]));
}

TEST_CASE("identical runs produce identical CSV files") {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  const std::string args = "run --preset barrier --epochs 60 --log-interval 5 --out ";
  REQUIRE(qwell(args + a.string()) == 0);
  REQUIRE(qwell(args + b.string()) == 0);
  CHECK(slurp(a / "history.csv") == slurp(b / "history.csv"));
  CHECK(slurp(a / "wavefunction.csv") == slurp(b / "wavefunction.csv"));
}

TEST_CASE("config files") {
  const auto dir = scratch("cfg");
  fs::create_directories(dir);
  const auto cfg = dir / "run.json";
  std::ofstream(cfg) << R"({
    "problem": {
      "name": "narrow-well", "domain": [-2, 2],
      "potential": {"segments": [{"x_lo": -0.5, "x_hi": 0.5, "v": 0}], "default_value": 30},
      "energy": {"mode": "trainable", "value": 2.0},
      "layer_sizes": [1, 10, 1], "n_collocation": 40
    },
    "training": {"epochs": 20, "log_interval": 10},
    "output_dir": ")" + (dir / "out").string() + R"("
  })";
  REQUIRE(qwell("run --config " + cfg.string()) == 0);
  CHECK(fs::exists(dir / "out" / "history.csv"));
  CHECK(fs::exists(dir / "out" / "summary.json"));

  CHECK(qwell("run --config " + (dir / "missing.json").string()) == 2);
  std::ofstream(dir / "broken.json") << "{\"preset\": ";
  CHECK(qwell("run --config " + (dir / "broken.json").string()) == 2);
  std::ofstream(dir / "bad.json") << R"({"preset": "finite-well", "training": {"epochs": -1}})";
  CHECK(qwell("run --config " + (dir / "bad.json").string()) == 2);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(qwell("") == 2);
  CHECK(qwell("launch") == 2);
  CHECK(qwell("run") == 2);
  CHECK(qwell("run --preset finite-well --config x.json") == 2);
  CHECK(qwell("run --preset moat") == 2);
  CHECK(qwell("run --preset finite-well --epochs 0") == 2);
  CHECK(qwell("run --preset finite-well --epochs ten") == 2);
}

TEST_CASE("divergence exits with 3 and keeps the partial history") {
  const auto out = scratch("diverged");
  CHECK(qwell("run --preset finite-well --points 40 --epochs 50 --log-interval 1 --lr 1e200 "
              "--out " +
              out.string()) == 3);
  const auto history = read_csv(out / "history.csv");
  check_rectangular(history);
  CHECK(history.size() >= 2);
  const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
  CHECK(summary["status"] == "diverged");
  CHECK(summary.contains("last_good"));
}

TEST_CASE("reference methods") {
  const auto iw = scratch("ref_iw");
  REQUIRE(qwell("reference --preset infinite-well --method analytic --count 1 --out " +
                iw.string()) == 0);
  const auto oracle = nlohmann::json::parse(slurp(iw / "oracle.json"));
  CHECK(oracle["eigenvalues"][0].get<double>() == doctest::Approx(9.8696044010893586));
  check_rectangular(read_csv(iw / "oracle_wavefunction.csv"));

  const auto fw = scratch("ref_fw");
  REQUIRE(qwell("reference --preset finite-well --method fd --out " + fw.string()) == 0);
  const auto fd = nlohmann::json::parse(slurp(fw / "oracle.json"));
  CHECK(fd["eigenvalues"].size() == 3);
  CHECK(fd["method"] == "fd");

  CHECK(qwell("reference --preset barrier --method transcendental --out " +
              scratch("ref_bad").string()) == 2);
  CHECK(qwell("reference --preset finite-well --method analytic") == 2);
  CHECK(qwell("reference --preset finite-well --method shooting") == 2);
  CHECK(qwell("reference --preset finite-well --points 2") == 2);
}

TEST_CASE("compare reports gaps and rejects mismatched problems") {
  const auto run = scratch("cmp_run");
  const auto oracle = scratch("cmp_oracle");
  const auto other = scratch("cmp_other");
  REQUIRE(qwell("run --preset infinite-well --epochs 300 --out " + run.string()) == 0);
  REQUIRE(qwell("reference --preset infinite-well --method analytic --out " + oracle.string()) ==
          0);
  REQUIRE(qwell("reference --preset barrier --points 300 --out " + other.string()) == 0);

  REQUIRE(qwell("compare --run " + run.string() + " --oracle " + oracle.string()) == 0);
  const auto c = nlohmann::json::parse(slurp(run / "comparison.json"));
  CHECK(c["rel_gap"] == 0.0);
  CHECK(c["pinn_energy"] == c["oracle_energy"]);
  CHECK(c["published_energy"].get<double>() == doctest::Approx(9.8696044010893586));
  CHECK(c["wavefunction_l_inf_gap"].get<double>() >= 0.0);

  CHECK(qwell("compare --run " + run.string() + " --oracle " + other.string()) == 2);
  CHECK(qwell("compare --run " + scratch("nowhere").string() + " --oracle " +
              oracle.string()) == 2);
}

TEST_CASE("gradcheck command") {
  CHECK(qwell("gradcheck --layers 1,8,1 --points 20") == 0);
  CHECK(slurp(scratch_root() / "last_stdout.txt").find("energy") != std::string::npos);
  CHECK(qwell("gradcheck --layers 1,30,30,1") == 2);
  CHECK(qwell("gradcheck --layers 2,8,1") == 2);
}
