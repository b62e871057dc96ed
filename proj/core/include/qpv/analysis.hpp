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

/**
 * @file
 * Experiment orchestration behind the `qpv` tool: pricing runs, error
 * scaling sweeps and Hellinger-fidelity studies, plus their JSON / CSV
 * serialisation. Every output is a deterministic function of the scenario
 * file and the configuration (seeds included).
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpv/amplitude_estimation.hpp"
#include "qpv/circuit.hpp"
#include "qpv/classical.hpp"
#include "qpv/grid.hpp"
#include "qpv/scenario.hpp"
#include "qpv/valuation.hpp"

namespace qpv {

struct ExperimentConfig {
  std::filesystem::path scenario_path;
  /// Empty means every scenario in the file.
  std::vector<MarketLabel> markets;
  std::vector<int> schedule;
  std::int64_t shots = 1000;
  std::vector<std::uint64_t> seeds{0};
  EncodingMode mode = EncodingMode::Exact;
  double scaling = 0.25;
  double noise = 0.0;
  int bits = 2;
  std::filesystem::path out;

  /// Throws InvalidConfig.
  void validate() const;
};

/// Everything derived from one market scenario of a scenario file.
struct PricingProblem {
  MarketLabel label;
  MarketScenario scenario;
  PortfolioSpec portfolio;
  LinearCoefficients coeffs;
  ValueScale scale;
  JointGrid grid;
  std::vector<double> payoff;
  double reference_mean;  ///< brute_force_mean over the grid, euros
};

PricingProblem build_problem(const ScenarioFile& file, MarketLabel label,
                             int bits);

/// Noiseless infinite-shot surrogate: the exact ancilla probability of A|0>
/// pushed through amplitude_to_value.
double ideal_quantum_value(const PricingProblem& problem, EncodingMode mode,
                           double scaling);

/// One quantum estimate: simulate the schedule's circuits, then MLE.
EstimateReport run_quantum_estimate(const PricingProblem& problem,
                                    const Schedule& schedule,
                                    EncodingMode mode, double scaling,
                                    std::uint64_t seed);

/// sum_i sqrt(p_i q_i). Throws DomainMismatch for differing sizes and
/// DomainError if either side does not sum to 1 within 1e-9.
double hellinger_fidelity(std::span<const double> p,
                          std::span<const double> q);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

struct PriceRun {
  std::uint64_t seed = 0;
  McResult classical;
  EstimateReport quantum;
};

struct PriceReport {
  MarketLabel label = MarketLabel::Stable;
  double market_value = 0.0;
  double v_min = 0.0;
  double v_max = 0.0;
  double reference_mean = 0.0;
  double ideal_quantum_value = 0.0;
  std::size_t loading_gates = 0;
  std::vector<PriceRun> runs;
};

/// Classical: mc_estimate with as many samples as the all-zeros schedule of
/// the same length queries. Quantum: cfg.schedule (default [0, 2]).
std::vector<PriceReport> run_price_scenario(const ScenarioFile& file,
                                            const ExperimentConfig& cfg);

struct SweepRow {
  std::string method;  ///< "classical" or "quantum"
  std::size_t circuits = 0;
  std::int64_t n_queries = 0;
  double sigma_amplitude = 0.0;  ///< mean over seeds
  double sigma_euros = 0.0;      ///< mean over seeds
  double slope_running = 0.0;    ///< fit over rows 1..M, NaN for M = 1
  double mean_value = 0.0;       ///< mean estimate over seeds, euros
};

struct SweepResult {
  MarketLabel label = MarketLabel::Stable;
  std::vector<SweepRow> rows;
  double classical_slope = 0.0;
  double quantum_slope = 0.0;
};

inline const std::vector<int> kExponentialSchedule{0, 1, 2, 4, 8, 16, 32};

/// Classical rows use [0] * M, quantum rows the first M entries of
/// cfg.schedule (default the exponential schedule). Runs on the first
/// market in cfg.markets, or stable.
SweepResult run_scaling_sweep(const ScenarioFile& file,
                              const ExperimentConfig& cfg);

struct FidelityReport {
  MarketLabel label = MarketLabel::Stable;
  std::string circuit;       ///< "state_preparation" or "state_preparation+qae"
  int grover_power = 0;
  std::size_t gates = 0;
  double lambda_total = 0.0;
  double mu_probability = 0.0;  ///< ideal vs depolarised distribution
  double mu = 0.0;              ///< mean over seeded shot histograms
  double sigma = 0.0;           ///< dispersion over seeds
};

/// Compares the ideal outcome distribution of (i) P and (ii) Q^m A with
/// m = max(cfg.schedule) against their depolarised versions.
std::vector<FidelityReport> run_fidelity_study(const ScenarioFile& file,
                                               const ExperimentConfig& cfg);

std::string price_report_json(std::span<const PriceReport> reports,
                              const ExperimentConfig& cfg);
/// Columns: method,M,n_queries,sigma_amplitude,sigma_euros,slope_running
std::string sweep_csv(const SweepResult& result);
std::string sweep_json(const SweepResult& result, const ExperimentConfig& cfg);
std::string fidelity_json(std::span<const FidelityReport> reports,
                          const ExperimentConfig& cfg);
/// Derived a/b/c per asset and V_min/V_max per scenario.
std::string describe_scenario_json(const ScenarioFile& file, int bits);

}  // namespace qpv
