/*
 * Copyright 2026 The SP-ICL Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: run, sweep and check.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spicl/config.h"
#include "spicl/errors.h"
#include "spicl/experiment.h"
#include "spicl/report.h"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kDivergence = 2, kIoError = 3 };

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = "out";
  int decimate = 0;
  double threshold = 0.0;
};

spicl::SimConfig Resolve(const CommonArgs& args, const spicl::Scenario& scenario) {
  spicl::SimConfig config = args.config_path.empty()
                                ? spicl::SimConfig::Demo()
                                : spicl::LoadConfig(args.config_path);
  for (const std::string& o : args.overrides) spicl::ApplyOverride(&config, o);
  if (args.decimate > 0) config.decimate = args.decimate;
  if (args.threshold > 0.0) config.threshold = args.threshold;
  config.Validate(scenario.basis.state_dim(), scenario.basis.param_dim());
  return config;
}

std::vector<double> ParseLambdas(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw 0;
      out.push_back(v);
    } catch (...) {
      throw spicl::ConfigError("--lambdas: bad value '" + item + "'", "--lambdas");
    }
  }
  if (out.empty()) throw spicl::ConfigError("--lambdas: empty list", "--lambdas");
  return out;
}

int CmdRun(const CommonArgs& args, bool stack_log) {
  const spicl::Scenario scenario = spicl::Scenario::Demo();
  const spicl::SimConfig config = Resolve(args, scenario);
  spicl::RunOptions options;
  options.track_every_insertion = stack_log;
  const spicl::RunResult run = spicl::RunScenario(config, scenario, options);
  const spicl::SweepRow row = spicl::SummarizeRun(run, config);
  spicl::WriteRunFiles(args.out_dir, run, row, config);
  spicl::WriteTextFile((std::filesystem::path(args.out_dir) / "config.cfg").string(),
                       spicl::SerializeConfig(config));
  std::cout << spicl::FormatRunSummary(run, row, config);
  return kOk;
}

int CmdSweep(const CommonArgs& args, const std::string& lambdas_csv, int workers) {
  const spicl::Scenario scenario = spicl::Scenario::Demo();
  const spicl::SimConfig config = Resolve(args, scenario);
  if (workers < 1) throw spicl::ConfigError("--workers must be >= 1", "--workers");
  const std::vector<double> lambdas =
      lambdas_csv.empty() ? spicl::DefaultLambdaGrid() : ParseLambdas(lambdas_csv);

  std::mutex log_mu;
  const std::filesystem::path out(args.out_dir);
  auto on_run = [&](double lambda, const spicl::RunResult* run,
                    const spicl::SweepRow& row) {
    spicl::SimConfig c = config;
    c.lambda = lambda;
    if (run != nullptr) {
      spicl::WriteRunFiles((out / spicl::LambdaDirName(lambda)).string(), *run,
                           row, c);
    }
    std::lock_guard<std::mutex> lock(log_mu);
    std::cerr << "lambda=" << lambda << (row.ok ? " done" : " FAILED: " + row.error)
              << "\n";
  };
  const spicl::SweepReport report =
      spicl::LambdaSweep(config, scenario, lambdas, workers, on_run);
  spicl::WriteTextFile((out / "sweep_summary.tsv").string(),
                       spicl::FormatSweepTable(report));
  spicl::WriteTextFile((out / "confusion.txt").string(),
                       spicl::FormatConfusionBlocks(report));
  spicl::WriteTextFile((out / "config.cfg").string(),
                       spicl::SerializeConfig(config));
  std::cout << spicl::FormatSweepTable(report);
  for (const spicl::SweepRow& r : report.rows) {
    if (!r.ok) return kDivergence;
  }
  return kOk;
}

int CmdCheck(const CommonArgs& args) {
  const spicl::Scenario scenario = spicl::Scenario::Demo();
  const spicl::SimConfig config = Resolve(args, scenario);
  std::cout << "lambda = " << config.lambda << "\n"
            << spicl::FormatGainReport(spicl::EvaluateGains(config, scenario));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparsity-promoting integral concurrent learning simulator"};
  app.require_subcommand(1);

  CommonArgs run_args;
  CommonArgs sweep_args;
  CommonArgs check_args;
  bool stack_log = false;
  std::string lambdas_csv;
  int workers = 1;

  auto add_common = [](CLI::App* cmd, CommonArgs* a, bool outputs) {
    cmd->add_option("--config", a->config_path, "Scenario config file");
    cmd->add_option("--set", a->overrides,
                    "Override section.key=value (repeatable)");
    if (outputs) {
      cmd->add_option("--out", a->out_dir, "Output directory");
      cmd->add_option("--decimate", a->decimate,
                      "Write every N-th step to the series files");
      cmd->add_option("--threshold", a->threshold, "Sparsity threshold tau");
    }
  };

  CLI::App* run = app.add_subcommand("run", "Simulate one scenario");
  add_common(run, &run_args, true);
  run->add_flag("--stack-log", stack_log,
                "Write stack_events.dat (one eigen-solve per insertion)");

  CLI::App* sweep = app.add_subcommand("sweep", "Run a lambda sweep");
  add_common(sweep, &sweep_args, true);
  sweep->add_option("--lambdas", lambdas_csv, "Comma-separated lambda values");
  sweep->add_option("--workers", workers, "Parallel simulations");

  CLI::App* check = app.add_subcommand("check", "Report gain conditions");
  add_common(check, &check_args, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return CmdRun(run_args, stack_log);
    if (*sweep) return CmdSweep(sweep_args, lambdas_csv, workers);
    if (*check) return CmdCheck(check_args);
  } catch (const spicl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const spicl::DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return kDivergence;
  } catch (const spicl::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const spicl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kOk;
}
