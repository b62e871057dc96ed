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

#include "qpv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qpv/error.hpp"
#include "qpv/rng.hpp"

namespace qpv {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kDistributionTolerance = 1e-9;
const std::vector<int> kPairedQuantumSchedule{0, 2};
constexpr std::uint64_t kClassicalStream = 0xC1A55;

std::vector<MarketLabel> selected_markets(const ScenarioFile& file,
                                          const ExperimentConfig& cfg) {
  if (!cfg.markets.empty()) return cfg.markets;
  std::vector<MarketLabel> out;
  for (const auto& [label, _] : file.scenarios) out.push_back(label);
  return out;
}

double mean_of(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) /
         static_cast<double>(xs.size());
}

double stddev_of(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

Json config_json(const ExperimentConfig& cfg) {
  Json markets = Json::array();
  for (auto m : cfg.markets) markets.push_back(to_string(m));
  return Json{{"scenario", cfg.scenario_path.string()},
              {"markets", markets},
              {"schedule", cfg.schedule},
              {"shots", cfg.shots},
              {"seeds", cfg.seeds},
              {"mode", to_string(cfg.mode)},
              {"scaling_c", cfg.scaling},
              {"noise", cfg.noise},
              {"bits", cfg.bits}};
}

Json records_json(std::span<const ShotRecord> records) {
  Json out = Json::array();
  for (const auto& r : records) {
    out.push_back({{"m", r.grover_power}, {"shots", r.shots}, {"good", r.good}});
  }
  return out;
}

Json estimate_json(const EstimateReport& e) {
  return Json{{"theta_hat", e.theta_hat},
              {"a_hat", e.a_hat},
              {"f_hat", e.f_hat},
              {"value_estimate", e.value_estimate},
              {"sigma_amplitude", e.sigma_amplitude},
              {"sigma_euros", e.sigma_euros},
              {"sigma_relative", e.sigma_euros / e.value_estimate},
              {"n_queries", e.n_queries},
              {"schedule", e.schedule.grover_powers},
              {"shots_per_circuit", e.schedule.shots_per_circuit},
              {"mode", to_string(e.mode)},
              {"scaling_c", e.scaling},
              {"records", records_json(e.records)}};
}

Json distribution_json(const DiscreteDistribution& d) {
  return Json{{"points", d.points}, {"probs", d.probs}};
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
  const auto fail = [](const std::string& what) {
    throw Error(ErrorKind::InvalidConfig, what);
  };
  for (int m : schedule) {
    if (m < 0) fail("Grover powers must be >= 0");
  }
  if (shots < 1) fail("shots must be >= 1");
  if (seeds.empty()) fail("at least one seed is required");
  if (mode == EncodingMode::LinearRotation && !(scaling > 0.0 && scaling <= 0.5)) {
    fail("scaling c must lie in (0, 0.5]");
  }
  if (!(noise >= 0.0 && noise <= 1.0)) fail("noise rate must lie in [0, 1]");
  if (bits < 1 || bits > 10) fail("bits must lie in [1, 10]");
}

PricingProblem build_problem(const ScenarioFile& file, MarketLabel label,
                             int bits) {
  const MarketScenario& scenario = file.scenario(label);
  PortfolioSpec portfolio = file.portfolio_for(label);
  LinearCoefficients coeffs = linear_coefficients(portfolio.assets);
  ValueScale scale = value_bounds(portfolio, coeffs, scenario);
  JointGrid grid = scenario_grid(scenario, bits);
  std::vector<double> payoff = grid_values_to_payoff(grid, portfolio, coeffs, scale);
  const double reference = brute_force_mean(grid, portfolio, coeffs);
  return PricingProblem{label,
                        scenario,
                        std::move(portfolio),
                        std::move(coeffs),
                        scale,
                        std::move(grid),
                        std::move(payoff),
                        reference};
}

double ideal_quantum_value(const PricingProblem& problem, EncodingMode mode,
                           double scaling) {
  const AmplitudeOracle oracle(problem.grid,
                               PayoffEncoding{mode, scaling, problem.payoff});
  const double a = ancilla_one_probability(oracle.prepare());
  return amplitude_to_value(a, 0.0, mode, scaling, problem.scale).value;
}

EstimateReport run_quantum_estimate(const PricingProblem& problem,
                                    const Schedule& schedule,
                                    EncodingMode mode, double scaling,
                                    std::uint64_t seed) {
  const AmplitudeOracle oracle(problem.grid,
                               PayoffEncoding{mode, scaling, problem.payoff});
  const auto records = simulate_records(oracle, schedule, seed);
  return estimate_from_records(records, schedule, mode, scaling, problem.scale);
}

double hellinger_fidelity(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw Error(ErrorKind::DomainMismatch,
                "distributions over " + std::to_string(p.size()) + " and " +
                    std::to_string(q.size()) + " outcomes");
  }
  const double sp = std::accumulate(p.begin(), p.end(), 0.0);
  const double sq = std::accumulate(q.begin(), q.end(), 0.0);
  if (std::abs(sp - 1.0) > kDistributionTolerance ||
      std::abs(sq - 1.0) > kDistributionTolerance) {
    throw Error(ErrorKind::DomainError, "distributions must sum to 1");
  }
  double mu = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    mu += std::sqrt(std::max(p[i], 0.0) * std::max(q[i], 0.0));
  }
  return std::min(mu, 1.0);
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::LengthMismatch, "slope fit needs paired samples");
  }
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> lx(x.size());
  std::vector<double> ly(y.size());
  std::transform(x.begin(), x.end(), lx.begin(), [](double v) { return std::log(v); });
  std::transform(y.begin(), y.end(), ly.begin(), [](double v) { return std::log(v); });
  const double mx = mean_of(lx);
  const double my = mean_of(ly);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

std::vector<PriceReport> run_price_scenario(const ScenarioFile& file,
                                            const ExperimentConfig& cfg) {
  cfg.validate();
  const Schedule quantum{cfg.schedule.empty() ? kPairedQuantumSchedule : cfg.schedule,
                         cfg.shots};
  const Schedule classical{std::vector<int>(quantum.num_circuits(), 0), cfg.shots};
  const std::int64_t classical_samples = std::max<std::int64_t>(2, query_count(classical));

  std::vector<PriceReport> out;
  for (MarketLabel label : selected_markets(file, cfg)) {
    const PricingProblem problem = build_problem(file, label, cfg.bits);
    PriceReport report;
    report.label = label;
    report.market_value = problem.portfolio.market_value;
    report.v_min = problem.scale.v_min();
    report.v_max = problem.scale.v_max();
    report.reference_mean = problem.reference_mean;
    report.ideal_quantum_value = ideal_quantum_value(problem, cfg.mode, cfg.scaling);
    report.loading_gates = joint_loading_circuit(problem.grid).gate_count();
    for (std::uint64_t seed : cfg.seeds) {
      PriceRun run;
      run.seed = seed;
      run.classical = mc_estimate(
          problem.portfolio, problem.coeffs, problem.scenario, problem.grid,
          McConfig{classical_samples, mix_seed(seed, kClassicalStream),
                   SamplingMode::DiscreteGrid});
      run.quantum = run_quantum_estimate(problem, quantum, cfg.mode, cfg.scaling, seed);
      report.runs.push_back(std::move(run));
    }
    out.push_back(std::move(report));
  }
  return out;
}

SweepResult run_scaling_sweep(const ScenarioFile& file,
                              const ExperimentConfig& cfg) {
  cfg.validate();
  SweepResult out;
  out.label = cfg.markets.empty() ? MarketLabel::Stable : cfg.markets.front();
  const PricingProblem problem = build_problem(file, out.label, cfg.bits);
  const std::vector<int> quantum_powers =
      cfg.schedule.empty() ? kExponentialSchedule : cfg.schedule;
  const std::size_t max_circuits = quantum_powers.size();

  for (const std::string method : {"classical", "quantum"}) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t m = 1; m <= max_circuits; ++m) {
      Schedule schedule{method == "classical"
                            ? std::vector<int>(m, 0)
                            : std::vector<int>(quantum_powers.begin(),
                                               quantum_powers.begin() +
                                                   static_cast<std::ptrdiff_t>(m)),
                        cfg.shots};
      std::vector<double> sig_a;
      std::vector<double> sig_e;
      std::vector<double> values;
      for (std::uint64_t seed : cfg.seeds) {
        const auto e = run_quantum_estimate(problem, schedule, cfg.mode, cfg.scaling, seed);
        sig_a.push_back(e.sigma_amplitude);
        sig_e.push_back(e.sigma_euros);
        values.push_back(e.value_estimate);
      }
      SweepRow row;
      row.method = method;
      row.circuits = m;
      row.n_queries = query_count(schedule);
      row.sigma_amplitude = mean_of(sig_a);
      row.sigma_euros = mean_of(sig_e);
      row.mean_value = mean_of(values);
      xs.push_back(static_cast<double>(row.n_queries));
      ys.push_back(row.sigma_amplitude);
      row.slope_running = loglog_slope(xs, ys);
      out.rows.push_back(row);
    }
    (method == "classical" ? out.classical_slope : out.quantum_slope) =
        out.rows.back().slope_running;
  }
  return out;
}

std::vector<FidelityReport> run_fidelity_study(const ScenarioFile& file,
                                               const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<int>& powers =
      cfg.schedule.empty() ? kPairedQuantumSchedule : cfg.schedule;
  const int grover_power = *std::max_element(powers.begin(), powers.end());

  std::vector<FidelityReport> out;
  for (MarketLabel label : selected_markets(file, cfg)) {
    const PricingProblem problem = build_problem(file, label, cfg.bits);
    const AmplitudeOracle oracle(problem.grid,
                                 PayoffEncoding{cfg.mode, cfg.scaling, problem.payoff});

    struct Circuit {
      std::string name;
      int power;
      std::size_t gates;
      std::vector<double> ideal;
    };
    const std::vector<Circuit> circuits{
        {"state_preparation", 0, oracle.loading_gate_count(),
         prepare_p(problem.grid).probabilities()},
        {"state_preparation+qae", grover_power,
         oracle.gate_count() +
             static_cast<std::size_t>(grover_power) * oracle.grover_gate_count(),
         amplified_state(oracle, grover_power).probabilities()},
    };

    for (std::size_t c = 0; c < circuits.size(); ++c) {
      const Circuit& circuit = circuits[c];
      FidelityReport r;
      r.label = label;
      r.circuit = circuit.name;
      r.grover_power = circuit.power;
      r.gates = circuit.gates;
      r.lambda_total = compound_depolarizing(cfg.noise, circuit.gates);
      const auto noisy = depolarize(circuit.ideal, r.lambda_total);
      r.mu_probability = hellinger_fidelity(circuit.ideal, noisy);

      std::vector<double> per_seed;
      for (std::uint64_t seed : cfg.seeds) {
        const ShotSample s = sample_distribution(noisy, cfg.shots, mix_seed(seed, c));
        std::vector<double> empirical(s.histogram.size());
        for (std::size_t i = 0; i < empirical.size(); ++i) {
          empirical[i] = static_cast<double>(s.histogram[i]) / static_cast<double>(s.shots);
        }
        per_seed.push_back(hellinger_fidelity(circuit.ideal, empirical));
      }
      r.mu = mean_of(per_seed);
      r.sigma = stddev_of(per_seed);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::string price_report_json(std::span<const PriceReport> reports,
                              const ExperimentConfig& cfg) {
  Json markets = Json::array();
  for (const auto& r : reports) {
    Json runs = Json::array();
    std::vector<double> classical_means;
    std::vector<double> quantum_means;
    for (const auto& run : r.runs) {
      classical_means.push_back(run.classical.mean);
      quantum_means.push_back(run.quantum.value_estimate);
      runs.push_back({{"seed", run.seed},
                      {"classical",
                       {{"method", "monte_carlo"},
                        {"mean", run.classical.mean},
                        {"sigma_euros", run.classical.sigma},
                        {"sigma_relative", run.classical.sigma / run.classical.mean},
                        {"n_queries", run.classical.n_queries}}},
                      {"quantum", estimate_json(run.quantum)}});
    }
    markets.push_back({{"market", to_string(r.label)},
                       {"market_value", r.market_value},
                       {"v_min", r.v_min},
                       {"v_max", r.v_max},
                       {"reference_mean", r.reference_mean},
                       {"ideal_quantum_value", r.ideal_quantum_value},
                       {"loading_gates", r.loading_gates},
                       {"classical_mean_over_seeds", mean_of(classical_means)},
                       {"quantum_mean_over_seeds", mean_of(quantum_means)},
                       {"runs", runs}});
  }
  return Json{{"command", "price"}, {"config", config_json(cfg)}, {"markets", markets}}
             .dump(2) + "\n";
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "method,M,n_queries,sigma_amplitude,sigma_euros,slope_running\n";
  for (const auto& row : result.rows) {
    out << row.method << ',' << row.circuits << ',' << row.n_queries << ','
        << format_number(row.sigma_amplitude) << ','
        << format_number(row.sigma_euros) << ','
        << format_number(row.slope_running) << '\n';
  }
  return out.str();
}

std::string sweep_json(const SweepResult& result, const ExperimentConfig& cfg) {
  Json rows = Json::array();
  for (const auto& row : result.rows) {
    rows.push_back({{"method", row.method},
                    {"M", row.circuits},
                    {"n_queries", row.n_queries},
                    {"sigma_amplitude", row.sigma_amplitude},
                    {"sigma_euros", row.sigma_euros},
                    {"slope_running", row.slope_running},
                    {"mean_value", row.mean_value}});
  }
  return Json{{"command", "sweep"},
              {"config", config_json(cfg)},
              {"market", to_string(result.label)},
              {"classical_slope", result.classical_slope},
              {"quantum_slope", result.quantum_slope},
              {"rows", rows}}
             .dump(2) + "\n";
}

std::string fidelity_json(std::span<const FidelityReport> reports,
                          const ExperimentConfig& cfg) {
  Json items = Json::array();
  for (const auto& r : reports) {
    items.push_back({{"market", to_string(r.label)},
                     {"circuit", r.circuit},
                     {"grover_power", r.grover_power},
                     {"gates", r.gates},
                     {"lambda_total", r.lambda_total},
                     {"mu_probability", r.mu_probability},
                     {"mu", r.mu},
                     {"sigma", r.sigma}});
  }
  return Json{{"command", "fidelity"}, {"config", config_json(cfg)}, {"fidelities", items}}
             .dump(2) + "\n";
}

std::string describe_scenario_json(const ScenarioFile& file, int bits) {
  Json scenarios = Json::object();
  for (const auto& [label, sc] : file.scenarios) {
    const PricingProblem problem = build_problem(file, label, bits);
    Json assets = Json::array();
    for (std::size_t j = 0; j < problem.portfolio.assets.size(); ++j) {
      const auto& asset = problem.portfolio.assets[j];
      assets.push_back({{"name", asset.name},
                        {"holding", problem.portfolio.holdings[j]},
                        {"g", asset.growth_rate},
                        {"r_inf", asset.longterm_discount()},
                        {"a", problem.coeffs.a[j]},
                        {"b", problem.coeffs.b[j]},
                        {"c", problem.coeffs.c[j]},
                        {"v_exact", intrinsic_value_exact(asset, 0.0, 0.0)}});
    }
    scenarios[to_string(label)] = {
        {"assets", assets},
        {"v_min", problem.scale.v_min()},
        {"v_max", problem.scale.v_max()},
        {"reference_mean", problem.reference_mean},
        {"delta_e_grid", distribution_json(problem.grid.delta_e_dist())},
        {"delta_r_grid", distribution_json(problem.grid.delta_r_dist())},
        {"payoff", problem.payoff}};
  }
  return Json{{"command", "validate"},
              {"riskfree_longterm", file.riskfree_longterm},
              {"market_value", file.portfolio.market_value},
              {"scenarios", scenarios}}
             .dump(2) + "\n";
}

}  // namespace qpv
