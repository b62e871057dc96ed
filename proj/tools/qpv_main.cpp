// Copyright 2026 The qpv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qpv: price a portfolio by simulated amplitude estimation.
//
//   qpv validate [--scenario FILE]
//   qpv price    [--market M] [--schedule 0,2] [--shots N] [--seed 1,2,...]
//   qpv sweep    [--market M] [--schedule 0,1,2,4,8,16,32] [--json FILE]
//   qpv fidelity [--market M] [--noise RATE] [--schedule 0,2]
//
// Exit codes: 0 success, 2 invalid scenario/configuration, 1 other failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpv/analysis.hpp"
#include "qpv/error.hpp"

namespace {

constexpr int kExitValidation = 2;

struct Options {
  std::string scenario = QPV_DEFAULT_SCENARIO;
  std::string market;
  std::string schedule;
  std::int64_t shots = 1000;
  std::string seeds = "0";
  std::string mode = "exact";
  double scaling = 0.25;
  double noise = 0.0;
  int bits = 2;
  std::string out;
  std::string json_out;
};

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw qpv::Error(qpv::ErrorKind::InvalidConfig, "bad seed '" + item + "'");
    }
  }
  if (out.empty()) throw qpv::Error(qpv::ErrorKind::InvalidConfig, "no seeds");
  return out;
}

qpv::ExperimentConfig to_config(const Options& o) {
  qpv::ExperimentConfig cfg;
  cfg.scenario_path = o.scenario;
  if (!o.market.empty()) cfg.markets.push_back(qpv::parse_market_label(o.market));
  if (!o.schedule.empty()) cfg.schedule = qpv::parse_grover_powers(o.schedule);
  cfg.shots = o.shots;
  cfg.seeds = parse_seeds(o.seeds);
  cfg.mode = qpv::parse_encoding_mode(o.mode);
  cfg.scaling = o.scaling;
  cfg.noise = o.noise;
  cfg.bits = o.bits;
  cfg.out = o.out;
  cfg.validate();
  return cfg;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << text;
}

bool is_validation_error(qpv::ErrorKind kind) {
  switch (kind) {
    case qpv::ErrorKind::InvalidScenario:
    case qpv::ErrorKind::InvalidConfig:
    case qpv::ErrorKind::InvalidSchedule:
    case qpv::ErrorKind::InvalidGrid:
    case qpv::ErrorKind::DegenerateDenominator:
    case qpv::ErrorKind::DegenerateScale:
    case qpv::ErrorKind::LengthMismatch:
      return true;
    default:
      return false;
  }
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--scenario", o.scenario, "Scenario JSON file")->capture_default_str();
  cmd->add_option("--market", o.market, "bearish|stable|bullish (default: all, sweep: stable)");
  cmd->add_option("--schedule", o.schedule, "Grover powers, e.g. 0,1,2,4");
  cmd->add_option("--shots", o.shots, "Shots per circuit")->capture_default_str();
  cmd->add_option("--seed", o.seeds, "Seed or comma-separated seeds")->capture_default_str();
  cmd->add_option("--mode", o.mode, "Payoff encoding: exact|linear")->capture_default_str();
  cmd->add_option("--scaling-c", o.scaling, "Linear-rotation scaling c in (0, 0.5]")
      ->capture_default_str();
  cmd->add_option("--noise", o.noise, "Depolarizing rate per gate")->capture_default_str();
  cmd->add_option("--bits", o.bits, "Qubits per stochastic register")->capture_default_str();
  cmd->add_option("--out", o.out, "Output path (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Portfolio intrinsic value by simulated quantum amplitude estimation"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "Check a scenario file and print derived coefficients");
  validate->add_option("--scenario", o.scenario, "Scenario JSON file")->capture_default_str();
  validate->add_option("--bits", o.bits, "Qubits per stochastic register")->capture_default_str();
  validate->add_option("--out", o.out, "Output path (default: stdout)");

  auto* price = app.add_subcommand("price", "Classical and quantum estimates of the mean value");
  add_common(price, o);
  auto* sweep = app.add_subcommand("sweep", "Estimation error against query count (CSV)");
  add_common(sweep, o);
  sweep->add_option("--json", o.json_out, "Also write the sweep as JSON");
  auto* fidelity = app.add_subcommand("fidelity", "Hellinger fidelity under depolarizing noise");
  add_common(fidelity, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (validate->parsed()) {
      const auto file = qpv::load_scenario_file(o.scenario);
      emit(o.out, qpv::describe_scenario_json(file, o.bits));
      return 0;
    }
    const auto cfg = to_config(o);
    const auto file = qpv::load_scenario_file(cfg.scenario_path);
    if (price->parsed()) {
      const auto reports = qpv::run_price_scenario(file, cfg);
      emit(o.out, qpv::price_report_json(reports, cfg));
    } else if (sweep->parsed()) {
      const auto result = qpv::run_scaling_sweep(file, cfg);
      emit(o.out, qpv::sweep_csv(result));
      if (!o.json_out.empty()) emit(o.json_out, qpv::sweep_json(result, cfg));
    } else if (fidelity->parsed()) {
      const auto reports = qpv::run_fidelity_study(file, cfg);
      emit(o.out, qpv::fidelity_json(reports, cfg));
    }
  } catch (const qpv::Error& e) {
    std::cerr << "qpv: " << e.what() << '\n';
    return is_validation_error(e.kind()) ? kExitValidation : 1;
  } catch (const std::exception& e) {
    std::cerr << "qpv: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
