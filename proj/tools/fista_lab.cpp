// Copyright 2026 The fista-lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command line front end.
//
//   fista_lab run <config.json>... [--output-dir D] [--seed S] [--jobs N]
//   fista_lab repro-fig1 [--output-dir D]
//   fista_lab bcch-demo <scenario> <K> [--window W] [--tol T] [--ell L] [--hurdle H]
//   fista_lab validate <bt|linear|constant-ones> <K>
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or config error.

#include "fista_lab/experiment.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct RunOutcome {
  int code = kOk;
  std::string message;
};

RunOutcome run_one(const std::string& path, const std::string& output_root,
                   std::optional<std::uint64_t> seed, bool many) {
  RunOutcome out;
  std::ostringstream msg;
  try {
    fista_lab::ExperimentConfig cfg = fista_lab::load_config(path);
    if (seed) cfg.seed = *seed;
    if (!output_root.empty()) {
      const auto stem = std::filesystem::path(path).stem();
      cfg.output_dir = many ? (std::filesystem::path(output_root) / stem).string()
                            : output_root;
    }
    const fista_lab::ExperimentResult result = fista_lab::run_experiment(cfg);
    fista_lab::write_artifacts(cfg, result);
    msg << path << ": " << result.trace.method << " on " << result.trace.problem_id
        << ", " << result.trace.last().k << " iterations, final x = (";
    const auto& x = result.trace.last().x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      msg << (i ? ", " : "") << fista_lab::format_real(x[i]);
    }
    msg << "), artifacts in " << cfg.output_dir << "\n";
    for (const auto& c : result.checks) {
      msg << "  " << (c.pass ? "ok   " : "FAIL ") << c.claim << "  value "
          << fista_lab::format_real(c.value) << "  tol " << fista_lab::format_real(c.tol)
          << "\n";
    }
    if (result.pass()) {
      msg << "  all checks pass\n";
    } else {
      out.code = kCheckFailed;
      msg << "  failing:";
      for (const auto& name : result.failing()) msg << ' ' << name;
      msg << "\n";
    }
  } catch (const fista_lab::ConfigError& e) {
    out.code = kUsage;
    msg << path << ": config error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    out.code = kUsage;
    msg << path << ": error: " << e.what() << "\n";
  }
  out.message = msg.str();
  return out;
}

int cmd_run(const std::vector<std::string>& configs, const std::string& output_dir,
            std::optional<std::uint64_t> seed, std::size_t jobs) {
  std::vector<RunOutcome> outcomes(configs.size());
  const bool many = configs.size() > 1;
  std::atomic<std::size_t> next{0};
  std::mutex print_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      outcomes[i] = run_one(configs[i], output_dir, seed, many);
      std::lock_guard<std::mutex> lock(print_mutex);
      std::cout << outcomes[i].message << std::flush;
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, configs.size());
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  int code = kOk;
  for (const auto& o : outcomes) code = std::max(code, o.code);
  return code;
}

int cmd_repro_fig1(const std::string& output_dir) {
  const std::string text = fista_lab::fig1_points_text(fista_lab::repro_fig1());
  if (output_dir.empty()) {
    std::cout << text;
    return kOk;
  }
  std::filesystem::create_directories(output_dir);
  const auto path = (std::filesystem::path(output_dir) / "fig1_points.dat").string();
  fista_lab::write_text(path, text);
  std::cout << "wrote " << path << "\n";
  return kOk;
}

int cmd_bcch_demo(const std::string& name, std::size_t last,
                  const fista_lab::BcchDemoOptions& opt) {
  const auto names = fista_lab::scenario_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::cerr << "unknown scenario '" << name << "'; choose one of:";
    for (const auto& n : names) std::cerr << ' ' << n;
    std::cerr << "\n";
    return kUsage;
  }
  try {
    const auto report = fista_lab::bcch_demo(name, last, opt);
    for (const auto& line : report.lines) std::cout << line << "\n";
    return report.pass ? kOk : kCheckFailed;
  } catch (const fista_lab::Error& e) {
    std::cerr << "bcch-demo: " << e.what() << "\n";
    return kUsage;
  }
}

int cmd_validate(const std::string& name, std::size_t last) {
  if (name != "bt" && name != "linear" && name != "constant-ones") {
    std::cerr << "unknown schedule '" << name << "'; choose bt, linear or constant-ones\n";
    return kUsage;
  }
  if (last < 3) {
    std::cerr << "validate: K must be at least 3\n";
    return kUsage;
  }
  const auto v = fista_lab::validate_named_schedule(name, last);
  for (const auto& line : v.lines) std::cout << line << "\n";
  return v.pass ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fista-lab: instrumented PGM/FISTA runs and sequence checks"};
  app.require_subcommand(1);

  std::string output_dir;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  app.add_option("--output-dir", output_dir, "Directory for artifacts");
  app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--jobs", jobs, "Configs to run concurrently")->check(CLI::PositiveNumber);

  std::vector<std::string> configs;
  auto* run = app.add_subcommand("run", "Run experiment configs");
  run->add_option("configs", configs, "Config JSON files")->required();

  app.add_subcommand("repro-fig1", "Emit the first 25 feasibility iterates as points");

  std::string scenario;
  std::size_t demo_k = 0;
  fista_lab::BcchDemoOptions demo_opt;
  auto* demo = app.add_subcommand("bcch-demo", "Run a weighted-sequence scenario");
  demo->add_option("scenario", scenario, "ex42, ex43, ex44-sinh, linf-plus, linf-minus")
      ->required();
  demo->add_option("K", demo_k, "Last index of h")->required();
  demo->add_option("--window", demo_opt.window, "Verdict window");
  demo->add_option("--tol", demo_opt.tol, "Verdict oscillation tolerance");
  demo->add_option("--ell", demo_opt.ell, "Limit used by ex42/ex43");
  demo->add_option("--hurdle", demo_opt.hurdle, "Hurdle for linf-plus/minus");

  std::string schedule;
  std::size_t validate_k = 0;
  auto* validate = app.add_subcommand("validate", "Certify a momentum schedule");
  validate->add_option("schedule", schedule, "bt, linear or constant-ones")->required();
  validate->add_option("K", validate_k, "Last index")->required();

  for (auto* sub : {run, demo, validate}) sub->fallthrough();
  app.get_subcommand("repro-fig1")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*run) return cmd_run(configs, output_dir, seed, jobs);
  if (*app.get_subcommand("repro-fig1")) return cmd_repro_fig1(output_dir);
  if (*demo) return cmd_bcch_demo(scenario, demo_k, demo_opt);
  return cmd_validate(schedule, validate_k);
}
